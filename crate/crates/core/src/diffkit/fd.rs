use crate::diffkit::{Jet, MAX_ORDER};
use crate::error::{Error, Result};
use crate::Scalar;

/// Central-difference estimate of `f`'s derivatives `0..=order` at `t`.
///
/// First and second derivatives use the three-point stencils, third and
/// fourth the five-point ones, all second-order accurate in `h`. Errors from
/// `f` anywhere in the stencil `[t − 2h, t + 2h]` propagate.
pub fn fd_jet<S, F>(f: F, t: S, order: usize, h: S) -> Result<Jet<S>>
where
    S: Scalar,
    F: Fn(S) -> Result<S>,
{
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
    }
    if !(h > S::zero()) {
        return Err(Error::InvalidParameters(format!("finite-difference step {h} must be positive")));
    }
    let two = S::lit(2.0);
    let f0 = f(t)?;
    let mut d = [S::zero(); MAX_ORDER + 1];
    d[0] = f0;
    if order >= 1 {
        let (fp, fm) = (f(t + h)?, f(t - h)?);
        d[1] = (fp - fm) / (two * h);
        if order >= 2 {
            d[2] = (fp - two * f0 + fm) / (h * h);
        }
        if order >= 3 {
            let (fpp, fmm) = (f(t + two * h)?, f(t - two * h)?);
            d[3] = (fpp - two * fp + two * fm - fmm) / (two * h * h * h);
            if order >= 4 {
                d[4] = (fpp - S::lit(4.0) * fp + S::lit(6.0) * f0 - S::lit(4.0) * fm + fmm)
                    / (h * h * h * h);
            }
        }
    }
    Jet::from_derivatives(&d[..=order])
}
