//! Truncated Taylor jets in derivative convention, and a central-difference
//! oracle that is used only to cross-check them.

mod fd;
mod jet;

pub use fd::fd_jet;
pub use jet::{ArithOp, Jet, Jet2, Jet3, JetFn, MAX_ORDER};
