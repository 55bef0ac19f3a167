//! Stable mod-p cohomology dimension tables of alternating groups, verified
//! at desk scale by independent group-theoretic machinery.
//!
//! The crate is organized around six modules:
//!
//! * [`permgrp`] — exact finite permutation groups: orders, membership,
//!   centralizers, normalizers, conjugacy, and the Weyl action of a
//!   normalizer on an elementary abelian subgroup. This is the brute-force
//!   oracle layer for everything else.
//! * [`fplin`] — exact linear algebra over prime fields F_p: row reduction,
//!   kernels, fixed subspaces of matrix actions, and enumeration of
//!   GL_m(F_p) and its index-2 subgroup GL_m^+(F_p).
//! * [`monomial`] — complete monomial groups H ≀ S_m with their structure
//!   theory: unique decomposition into commuting monomial cycles, conjugacy
//!   by (length, determinant class), centralizer shapes, and the Z'
//!   subgroup inside A ≀ A_m.
//! * [`elemab`] — elementary abelian p-subgroups of symmetric and
//!   alternating groups built from regular-representation blocks: the
//!   T(i_1,…,i_m) family, the detecting subgroup E, Sylow p-subgroups, and
//!   the closed-system check.
//! * [`exterior`] — the exterior algebra Λ(e_1,…,e_k) over F_p with induced
//!   matrix-group actions and per-degree invariant dimensions.
//! * [`stablecoh`] — the closed-form dimension tables of H^d_s(A_n, Z/p)
//!   and the verification driver that re-derives them from independently
//!   computed Weyl invariants.

pub mod elemab;
mod error;
pub mod exterior;
pub mod fplin;
pub mod monomial;
pub mod permgrp;
pub mod stablecoh;

pub use error::{Error, Result};

/// Default cap on full element enumeration: groups of order up to 2^21
/// (so A_10 at 1 814 400 is enumerable, A_11 is not).
pub const DEFAULT_ENUM_CAP: u64 = 1 << 21;

/// Trial-division primality test; adequate for desk-scale moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
