use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

pub const DEFAULT_STEP: f64 = 1e-4;

/// Value and first/second Wirtinger derivatives of a real field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WirtingerJet {
    pub value: f64,
    pub d_z: Complex64,
    pub d_zbar: Complex64,
    pub d_zz: Complex64,
    pub d_zzbar: Complex64,
}

/// Nine-point central-difference jet of `field` at `z0`.
///
/// With real partials `f_x, f_y, f_xx, f_yy, f_xy`:
/// `u_z = (f_x − i f_y)/2`, `u_zz = (f_xx − f_yy − 2i f_xy)/4`,
/// `u_zz̄ = (f_xx + f_yy)/4`.
pub fn wirtinger_jet<F>(field: F, z0: Complex64, h: f64) -> Result<WirtingerJet>
where
    F: Fn(Complex64) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(GeomError::InvalidParams(format!("step h = {h} must be > 0")));
    }
    let eval = |dx: f64, dy: f64| -> Result<f64> {
        let at = z0 + Complex64::new(dx, dy);
        let v = field(at)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeomError::EvaluationFailure {
                at,
                detail: format!("non-finite value {v}"),
            })
        }
    };
    let f0 = eval(0.0, 0.0)?;
    let fxp = eval(h, 0.0)?;
    let fxm = eval(-h, 0.0)?;
    let fyp = eval(0.0, h)?;
    let fym = eval(0.0, -h)?;
    let fpp = eval(h, h)?;
    let fpm = eval(h, -h)?;
    let fmp = eval(-h, h)?;
    let fmm = eval(-h, -h)?;

    let fx = (fxp - fxm) / (2.0 * h);
    let fy = (fyp - fym) / (2.0 * h);
    let fxx = (fxp - 2.0 * f0 + fxm) / (h * h);
    let fyy = (fyp - 2.0 * f0 + fym) / (h * h);
    let fxy = (fpp - fpm - fmp + fmm) / (4.0 * h * h);

    let d_z = Complex64::new(fx, -fy) / 2.0;
    Ok(WirtingerJet {
        value: f0,
        d_z,
        d_zbar: d_z.conj(),
        d_zz: Complex64::new(fxx - fyy, -2.0 * fxy) / 4.0,
        d_zzbar: Complex64::new((fxx + fyy) / 4.0, 0.0),
    })
}

/// Richardson extrapolation of [`wirtinger_jet`] from steps `h` and `h/2`:
/// `(4·J(h/2) − J(h))/3`, which cancels the `O(h²)` truncation term.
///
/// Also returns the largest change between the two raw jets, a cheap
/// estimate of the discretization error at step `h/2`.
pub fn wirtinger_jet_richardson<F>(field: F, z0: Complex64, h: f64) -> Result<(WirtingerJet, f64)>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let coarse = wirtinger_jet(&field, z0, h)?;
    let fine = wirtinger_jet(&field, z0, h / 2.0)?;
    let ex = |c: Complex64, f: Complex64| (4.0 * f - c) / 3.0;
    let d_z = ex(coarse.d_z, fine.d_z);
    let gap = (coarse.d_z - fine.d_z)
        .norm()
        .max((coarse.d_zz - fine.d_zz).norm())
        .max((coarse.d_zzbar - fine.d_zzbar).norm());
    Ok((
        WirtingerJet {
            value: fine.value,
            d_z,
            d_zbar: d_z.conj(),
            d_zz: ex(coarse.d_zz, fine.d_zz),
            d_zzbar: ex(coarse.d_zzbar, fine.d_zzbar),
        },
        gap,
    ))
}
