use crate::error::{Error, Result};
use crate::Scalar;

/// Named singularity guards and finite-difference steps.
///
/// The `reg`, `flat` and `tau` guards are dimensionless and are measured
/// against the curve's `length_scale` / `speed_scale`, which
/// [`PlaneCurve`](crate::PlaneCurve) fills in from a probe grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<S> {
    /// Non-regular when `ṡ ≤ reg · speed_scale`.
    pub reg: S,
    /// Flat when `κ · length_scale ≤ flat`.
    pub flat: S,
    /// Torsion-free when `|τ| · length_scale ≤ tau`.
    pub tau: S,
    /// Torus guard band: outside the annulus by less than `dom · (a+b)²` is a domain error.
    pub dom: S,
    /// Step for first and second finite differences.
    pub fd_h_low: S,
    /// Step for third and fourth finite differences.
    pub fd_h_high: S,
    /// Half-width of the cusp exclusion band as a fraction of the period.
    pub cusp_guard: S,
    pub length_scale: S,
    pub speed_scale: S,
}

impl<S: Scalar> Default for Tolerances<S> {
    fn default() -> Self {
        Self {
            reg: S::lit(1e-9),
            flat: S::lit(1e-9),
            tau: S::lit(1e-9),
            dom: S::lit(1e-9),
            fd_h_low: S::lit(1e-5),
            fd_h_high: S::lit(1e-3),
            cusp_guard: S::lit(1e-4),
            length_scale: S::one(),
            speed_scale: S::one(),
        }
    }
}

impl<S: Scalar> Tolerances<S> {
    pub const KEYS: [&'static str; 7] =
        ["reg", "flat", "tau", "dom", "fd_h_low", "fd_h_high", "cusp_guard"];

    pub fn with_scales(mut self, length_scale: S, speed_scale: S) -> Self {
        self.length_scale = length_scale;
        self.speed_scale = speed_scale;
        self
    }

    pub fn set(&mut self, key: &str, value: S) -> Result<()> {
        if !(value >= S::zero()) || !value.is_finite() {
            return Err(Error::InvalidParameters(format!("tolerance {key} must be finite and ≥ 0")));
        }
        let slot = match key {
            "reg" => &mut self.reg,
            "flat" => &mut self.flat,
            "tau" => &mut self.tau,
            "dom" => &mut self.dom,
            "fd_h_low" => &mut self.fd_h_low,
            "fd_h_high" => &mut self.fd_h_high,
            "cusp_guard" => &mut self.cusp_guard,
            _ => return Err(Error::InvalidParameters(format!("unknown tolerance key {key:?}"))),
        };
        *slot = value;
        Ok(())
    }

    /// Finite-difference step appropriate for derivative order `k`.
    pub fn fd_step(&self, k: usize) -> S {
        if k <= 2 {
            self.fd_h_low
        } else {
            self.fd_h_high
        }
    }
}
