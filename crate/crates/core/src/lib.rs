//! Partial difference sets in elementary abelian groups.
//!
//! Two families of constructions are provided, together with certifiers that
//! check every output independently:
//!
//! - sets `{x : Q(x) ∈ C_i}` where `Q` is a nonsingular quadratic form on
//!   `F_q^{2m}` and `C_i` is a cyclotomic class of order `e` with uniform
//!   periods ([`pds::construct_cyclotomic_pds`]), plus the affine polar and
//!   RT2 special cases;
//! - level-set unions of homogeneous weakly regular `p`-ary bent functions
//!   ([`pds::construct_bent_pds`]).
//!
//! Certification is exact throughout: difference counting
//! ([`pds::verify_pds_bruteforce`]), character sums in `Z[ω_p]`
//! ([`pds::verify_pds_characters`]), and intersection numbers of translation
//! schemes including every fusion ([`scheme::certify_amorphic`]).

use std::sync::atomic::{AtomicUsize, Ordering};

pub mod bent;
pub mod cyclo;
pub mod error;
pub mod gf;
pub mod group;
pub mod pds;
pub mod qform;
pub mod scheme;
mod util;

pub use error::{Error, Result};

/// Default cap on field and group orders.
pub const DEFAULT_MAX_ORDER: usize = 1 << 20;

static MAX_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ORDER);

/// Current cap on the order of any field or group this crate will build.
pub fn max_order() -> usize {
    MAX_ORDER.load(Ordering::Relaxed)
}

/// Override the order cap for the whole process.
pub fn set_max_order(cap: usize) {
    MAX_ORDER.store(cap.max(2), Ordering::Relaxed);
}
