//! Reference optimisers used for comparison: global-best PSO and ACO_R.
//!
//! Both share the crate's seeded [`RngStream`](crate::RngStream), the
//! coordinate-wise boundary repair where applicable, and report an
//! [`Outcome`](crate::Outcome) so results are directly comparable with ABCO.
//! They minimise.

pub mod acor;
pub mod pso;

pub use acor::{run_acor, AcorConfig};
pub use pso::{run_pso, PsoConfig};

/// Sort key that sends NaN to the back.
#[inline]
pub(crate) fn rank_key(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}
