//! Derivative-free minimization in two real variables.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub step: f64,
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            step: 0.1,
            f_tol: 1e-14,
            x_tol: 1e-12,
            max_iter: 4000,
        }
    }
}

/// Minimizes `f` from `x0`; returns the best vertex and its value.
///
/// Standard reflection/expansion/contraction/shrink coefficients
/// (1, 2, 1/2, 1/2). Non-finite values are treated as `+∞`.
pub fn nelder_mead<F>(f: F, x0: [f64; 2], opts: &NelderMeadOptions) -> ([f64; 2], f64)
where
    F: Fn([f64; 2]) -> f64,
{
    let eval = |x: [f64; 2]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex = [
        (x0, eval(x0)),
        ([x0[0] + opts.step, x0[1]], 0.0),
        ([x0[0], x0[1] + opts.step], 0.0),
    ];
    simplex[1].1 = eval(simplex[1].0);
    simplex[2].1 = eval(simplex[2].0);

    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..opts.max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0], simplex[2]);
        let spread = (worst.1 - best.1).abs();
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| (x[0] - best.0[0]).abs().max((x[1] - best.0[1]).abs()))
            .fold(0.0, f64::max);
        if (spread <= opts.f_tol * (1.0 + best.1.abs()) && size <= opts.x_tol.max(1e-6 * opts.step))
            || size <= opts.x_tol
        {
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let reflected = lerp(centroid, worst.0, -1.0);
        let fr = eval(reflected);
        if fr < best.1 {
            let expanded = lerp(centroid, worst.0, -2.0);
            let fe = eval(expanded);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let (target, ft) = if fr < worst.1 { (reflected, fr) } else { worst };
            let contracted = lerp(centroid, target, 0.5);
            let fc = eval(contracted);
            if fc < ft {
                simplex[2] = (contracted, fc);
            } else {
                for i in 1..3 {
                    let x = lerp(best.0, simplex[i].0, 0.5);
                    simplex[i] = (x, eval(x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let (x, fx) = nelder_mead(
            |x| (x[0] - 0.3).powi(2) + 3.0 * (x[1] + 0.2).powi(2) + 1.0,
            [0.0, 0.0],
            &NelderMeadOptions::default(),
        );
        assert!((x[0] - 0.3).abs() < 1e-6 && (x[1] + 0.2).abs() < 1e-6);
        assert!((fx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rosenbrock() {
        let opts = NelderMeadOptions { max_iter: 20_000, ..Default::default() };
        let (x, _) = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            [-1.2, 1.0],
            &opts,
        );
        assert!((x[0] - 1.0).abs() < 1e-5 && (x[1] - 1.0).abs() < 1e-5);
    }
}
