//! Exact computer algebra for decomposing univariate polynomials and
//! rational functions over finite fields.
//!
//! The crate covers, at desk scale:
//!
//! - arithmetic in F_{p^m} with a deterministic modulus ([`gf`]);
//! - canonical rational functions, composition and exact left division
//!   ([`ratfunc`]);
//! - the unit group Γ ≅ PGL(2,q), subgroup lattices and maximal chains
//!   ([`moebius`]);
//! - fixing groups, fixed fields via elementary symmetric functions, and
//!   compositum generators ([`galois`]);
//! - complete decompositions up to equivalence, indecomposability
//!   obstructions and the degree-multiset consistency report ([`decomp`]);
//! - the invariant functions (x^q-x)^{q-1} and its degree-(q+1) cofactor,
//!   plus a theorem suite that re-checks their properties per field
//!   ([`constructions`]).
//!
//! With the default `parallel` feature the exhaustive scans shard across
//! rayon workers; results are merged in input order, so output is
//! identical with and without the feature.

pub mod constructions;
pub mod decomp;
pub mod error;
pub mod galois;
pub mod gf;
mod linalg;
pub mod moebius;
mod par;
pub mod parse;
pub mod ratfunc;
mod ypoly;

pub use error::{Error, Result};

/// Raw sequential/parallel entry points for the criterion benches.
/// Not part of the public API.
#[doc(hidden)]
pub mod bench_support {
    pub use crate::par::ExecMode;
    use crate::{decomp, galois, moebius, ratfunc::RatFunc};

    pub fn fixing_group(f: &RatFunc, mode: ExecMode) -> crate::Result<moebius::Subgroup> {
        galois::fixing_group_with(f, mode)
    }

    pub fn sweep_components(
        f: &RatFunc,
        d: usize,
        limits: &decomp::SearchLimits,
        mode: ExecMode,
    ) -> crate::Result<Vec<RatFunc>> {
        decomp::sweep_components(f, d, limits, mode)
    }

    pub fn subgroup_lattice(
        group: &moebius::Subgroup,
        opts: &moebius::LatticeOptions,
        mode: ExecMode,
    ) -> crate::Result<moebius::Lattice> {
        moebius::enumerate_subgroups_with(group, opts, mode)
    }

    pub fn fq_invariance(ctx: &crate::gf::FieldCtx, mode: ExecMode) -> crate::Result<bool> {
        crate::constructions::verify_fq_invariance_with(ctx, mode).map(|r| r.holds())
    }
}
