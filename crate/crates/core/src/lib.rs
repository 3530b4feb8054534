//! Closed toroidal space curves and their focal curves.
//!
//! A plane curve `α(t)` is lifted onto the right generalized cylinder over it,
//! `γ(t) = α(t) + f(t)·e₃`, where the height `f` is either supplied directly or
//! chosen so that `γ` lies on a torus. Frenet-Serret data, focal curvatures and
//! the focal curve of the lift are computed two ways: from the general
//! definitions on the space curve, and from closed forms expressed through the
//! base curve's signed curvature and arc-length prime. The projection of the
//! focal curve back to the plane is the generalized focal curve `β`.
//!
//! All math is generic over [`Scalar`] (`f32`, `f64`); the `*64` aliases below
//! name the `f64` instantiations used by the CLI.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diffkit;
pub mod error;
pub mod families;
pub mod focal;
pub mod frenet;
pub mod lift;
pub mod pipeline;
pub mod plane;
pub mod scalar;
pub mod tolerances;
pub mod vector;
pub mod verify;

pub use diffkit::{fd_jet, ArithOp, Jet, Jet2, Jet3, JetFn, MAX_ORDER};
pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec, Preset, TorusCompatibility};
pub use focal::{FocalCurvatures, FocalData};
pub use frenet::FrenetData;
pub use lift::{CylindricalLift, HeightBranch, TorusSpec};
pub use pipeline::{PointEval, PointStatus};
pub use plane::{PlaneCurve, PlaneInvariants};
pub use scalar::Scalar;
pub use tolerances::Tolerances;
pub use vector::{Vec2, Vec3};

pub type Jet64 = Jet<f64>;
pub type Jet32 = Jet<f32>;
pub type Jet2_64 = Jet2<f64>;
pub type Jet3_64 = Jet3<f64>;
pub type PlaneCurve64 = PlaneCurve<f64>;
pub type CylindricalLift64 = CylindricalLift<f64>;
pub type TorusSpec64 = TorusSpec<f64>;
pub type FrenetData64 = FrenetData<f64>;
pub type FocalData64 = FocalData<f64>;
pub type FamilySpec64 = FamilySpec<f64>;
pub type Tolerances64 = Tolerances<f64>;
