//! Decomposition of rational functions: right-component search, complete
//! decomposition chains up to equivalence, indecomposability (with fast
//! obstructions), equivalence of decompositions, tameness and the
//! degree-multiset consistency report.
//!
//! Right components are searched two ways. When |G(f)| = deg f the
//! intermediate fields biject with the subgroups of G(f), so components
//! come straight from the subgroup lattice. Otherwise an exhaustive
//! coefficient sweep filtered by exact left division is used; the sweep
//! declares its candidate-space size up front and errors out instead of
//! silently truncating when it exceeds the budget.

use crate::error::{Error, Result};
use crate::galois::{fixed_field, fixing_group_with};
use crate::moebius::{
    ensure_unit_enumerable, enumerate_gamma, enumerate_subgroups_with, unit_orbit_min, GammaKind,
    LatticeOptions, Moebius,
};
use crate::par::{self, ExecMode};
use crate::ratfunc::{Poly, RatFunc};
use std::fmt;

/// Budget for exhaustive component sweeps.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Cap on the declared candidate-space size: q^(2d+2) for rational
    /// sweeps, q^(d+1) for polynomial sweeps.
    pub max_candidates: u64,
    /// Bound passed to subgroup-lattice enumeration on the fast path.
    pub max_group_order: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_candidates: 10_000_000,
            max_group_order: 200,
        }
    }
}

/// An ordered list of components composing to the target,
/// outermost first: target = components[0] ∘ ... ∘ components[r-1].
#[derive(Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub target: RatFunc,
    pub components: Vec<RatFunc>,
}

impl Decomposition {
    /// Recomposes the components and compares with the target exactly.
    pub fn verify(&self) -> bool {
        let Some(mut acc) = self.components.last().cloned() else {
            return false;
        };
        for g in self.components.iter().rev().skip(1) {
            acc = g.compose(&acc);
        }
        acc == self.target
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.degree()).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" ∘ "))
    }
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn proper_divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// All right components of f of degree d, one canonical representative per
/// equivalence class (h ~ u∘h), sorted.
pub fn right_components(f: &RatFunc, d: usize, limits: &SearchLimits) -> Result<Vec<RatFunc>> {
    right_components_with(f, d, limits, ExecMode::default())
}

pub(crate) fn right_components_with(
    f: &RatFunc,
    d: usize,
    limits: &SearchLimits,
    mode: ExecMode,
) -> Result<Vec<RatFunc>> {
    assert!(!f.is_constant(), "components of a constant");
    let n = f.degree();
    assert!(
        d > 1 && d < n && n.is_multiple_of(d),
        "component degree must properly divide deg f"
    );
    let group = fixing_group_with(f, mode)?;
    if group.order() == n {
        // K(f) = Fix(G(f)): inequivalent degree-d components correspond to
        // the order-d subgroups of G(f).
        let lattice = enumerate_subgroups_with(
            &group,
            &LatticeOptions {
                max_order: limits.max_group_order,
            },
            mode,
        )?;
        let mut out = Vec::new();
        for node in lattice.nodes().iter().filter(|s| s.order() == d) {
            let gen = fixed_field(node).generator;
            assert!(
                f.left_divide(&gen).is_some(),
                "subgroup fixed-field generator must divide f"
            );
            out.push(unit_orbit_min(&gen)?);
        }
        out.sort();
        out.dedup();
        Ok(out)
    } else {
        sweep_components(f, d, limits, mode)
    }
}

/// Exhaustive coefficient sweep filtered by exact left division.
pub(crate) fn sweep_components(
    f: &RatFunc,
    d: usize,
    limits: &SearchLimits,
    mode: ExecMode,
) -> Result<Vec<RatFunc>> {
    let ctx = f.ctx().clone();
    let q = ctx.q() as u128;
    let polynomial = f.is_polynomial();
    let exponent = if polynomial {
        d as u32 + 1
    } else {
        2 * d as u32 + 2
    };
    let declared: u128 = q.checked_pow(exponent).unwrap_or(u128::MAX);
    if declared > limits.max_candidates as u128 {
        return Err(Error::BudgetExceeded {
            declared,
            cap: limits.max_candidates,
        });
    }

    let found: Vec<RatFunc> = if polynomial {
        // Every component class of a polynomial contains exactly one monic
        // polynomial with zero constant term, so only those are swept.
        let space = (ctx.q() as u128).pow(d as u32 - 1) as u64;
        par::range_filter_map(space, mode, |idx| {
            let mut coeffs = vec![ctx.zero(); d + 1];
            let mut rest = idx;
            for c in coeffs.iter_mut().take(d).skip(1) {
                *c = ctx.element(rest % ctx.q());
                rest /= ctx.q();
            }
            coeffs[d] = ctx.one();
            let h = RatFunc::from_poly(Poly::new(ctx.clone(), coeffs));
            f.left_divide(&h).is_some().then_some(h)
        })
    } else {
        // All canonical degree-d functions: numerator of degree <= d times
        // a monic denominator of degree <= d.
        let qn = ctx.q();
        let num_space = (qn as u128).pow(d as u32 + 1) as u64;
        let den_space: u64 = (0..=d as u32).map(|e| qn.pow(e)).sum();
        let total = num_space * den_space;
        par::range_filter_map(total, mode, |idx| {
            let num_idx = idx / den_space;
            let mut den_idx = idx % den_space;
            let mut e = 0usize;
            while den_idx >= qn.pow(e as u32) {
                den_idx -= qn.pow(e as u32);
                e += 1;
            }
            let mut num = Vec::with_capacity(d + 1);
            let mut rest = num_idx;
            for _ in 0..=d {
                num.push(ctx.element(rest % qn));
                rest /= qn;
            }
            let mut den = Vec::with_capacity(e + 1);
            let mut rest = den_idx;
            for _ in 0..e {
                den.push(ctx.element(rest % qn));
                rest /= qn;
            }
            den.push(ctx.one());
            let num = Poly::new(ctx.clone(), num);
            let den = Poly::new(ctx.clone(), den);
            let h = RatFunc::new(num, den).ok()?;
            if h.degree() != d {
                return None;
            }
            f.left_divide(&h).is_some().then_some(h)
        })
    };

    let mut out = Vec::with_capacity(found.len());
    for h in found {
        out.push(unit_orbit_min(&h)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// True when every decomposition of f is trivial (and f is not a unit).
pub fn is_indecomposable(f: &RatFunc, limits: &SearchLimits) -> Result<bool> {
    is_indecomposable_with(f, limits, ExecMode::default())
}

pub(crate) fn is_indecomposable_with(
    f: &RatFunc,
    limits: &SearchLimits,
    mode: ExecMode,
) -> Result<bool> {
    assert!(!f.is_constant(), "indecomposability of a constant");
    let n = f.degree();
    if n == 1 {
        return Ok(false); // units are excluded by definition
    }
    if obstruction_proves_indecomposable(f) {
        return Ok(true);
    }
    for d in proper_divisors(n) {
        if !right_components_with(f, d, limits, mode)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree-arithmetic obstructions that prove indecomposability without any
/// search. Returns true only on a proof; false means inconclusive.
///
/// Routes, in order: prime degree; the wild-polynomial coefficient
/// obstruction for p-power degrees (a component split p^r ∘ p^s forces all
/// coefficients strictly between deg-p^min(r,s) and deg to vanish); and
/// pole-order multiplicativity (after moving a rational pole to infinity,
/// deltas of the normalized components multiply, so a delta with no
/// admissible factorization along any degree split rules out all of them).
pub fn obstruction_proves_indecomposable(f: &RatFunc) -> bool {
    let n = f.degree();
    if n == 1 {
        return false;
    }
    if is_prime(n) {
        return true;
    }
    if wild_poly_obstruction(f) {
        return true;
    }
    delta_obstruction(f)
}

fn wild_poly_obstruction(f: &RatFunc) -> bool {
    if !f.is_polynomial() {
        return false;
    }
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    let n = f.degree();
    // n must be p^k with k >= 2.
    let mut k = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    if m != 1 || k < 2 {
        return false;
    }
    let monic = f.num().monic();
    // Split p^r ∘ p^s, r + s = k: killed when some coefficient strictly
    // between n - p^min(r,s) and n is nonzero.
    for r in 1..k {
        let s = k - r;
        let low = n - p.pow(r.min(s) as u32);
        let killed = (low + 1..n).any(|j| !ctx.is_zero(monic.coeff(j)));
        if !killed {
            return false;
        }
    }
    true
}

fn delta_obstruction(f: &RatFunc) -> bool {
    let n = f.degree() as u64;
    let mut variants = Vec::new();
    if f.delta() > 0 {
        variants.push(f.clone());
    }
    // Move each rational pole to infinity: f ∘ (ξ + 1/x).
    let ctx = f.ctx();
    for xi in f.den().roots() {
        let v = RatFunc::new(Poly::new(ctx.clone(), vec![ctx.one(), xi]), Poly::x(ctx))
            .expect("x is nonzero");
        let fv = f.compose(&v);
        if fv.delta() > 0 {
            variants.push(fv);
        }
    }
    'variant: for fv in variants {
        let delta = fv.delta() as u64;
        for dg in 2..n {
            if !n.is_multiple_of(dg) {
                continue;
            }
            let dh = n / dg;
            if dh < 2 {
                continue;
            }
            let admissible = (1..=delta)
                .filter(|a| delta.is_multiple_of(*a))
                .any(|a| a <= dg && delta / a <= dh);
            if admissible {
                continue 'variant;
            }
        }
        return true;
    }
    false
}

/// All complete decompositions of f up to componentwise equivalence,
/// in canonical order. A unit has none; an indecomposable f has exactly
/// the one-component chain [f].
pub fn complete_decompositions(f: &RatFunc, limits: &SearchLimits) -> Result<Vec<Decomposition>> {
    complete_decompositions_with(f, limits, ExecMode::default())
}

pub(crate) fn complete_decompositions_with(
    f: &RatFunc,
    limits: &SearchLimits,
    mode: ExecMode,
) -> Result<Vec<Decomposition>> {
    assert!(!f.is_constant(), "decomposition of a constant");
    if f.is_unit() {
        return Ok(Vec::new());
    }
    let chains = complete_chains(f, limits, mode)?;
    let mut out: Vec<Decomposition> = chains
        .into_iter()
        .map(|components| Decomposition {
            target: f.clone(),
            components,
        })
        .collect();
    debug_assert!(out.iter().all(Decomposition::verify));
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.components.cmp(&b.components))
    });
    Ok(out)
}

fn complete_chains(
    f: &RatFunc,
    limits: &SearchLimits,
    mode: ExecMode,
) -> Result<Vec<Vec<RatFunc>>> {
    let n = f.degree();
    let mut out = Vec::new();
    let mut decomposable = false;
    for d in proper_divisors(n) {
        for h in right_components_with(f, d, limits, mode)? {
            decomposable = true;
            // Only an indecomposable component can be the rightmost entry
            // of a complete chain; its class determines the chain's final
            // intermediate field, so recursion over the left factor never
            // produces duplicates.
            if is_indecomposable_with(&h, limits, mode)? {
                let g = f.left_divide(&h).expect("found components divide f");
                for mut chain in complete_chains(&g, limits, mode)? {
                    chain.push(h.clone());
                    out.push(chain);
                }
            }
        }
    }
    if !decomposable {
        out.push(vec![f.clone()]);
    }
    Ok(out)
}

/// If the two decompositions of the same function are equivalent, returns
/// the unit u with h1 = u ∘ h2 (hence g1 = g2 ∘ u^{-1}).
pub fn decompositions_equivalent(
    g1: &RatFunc,
    h1: &RatFunc,
    g2: &RatFunc,
    h2: &RatFunc,
) -> Result<Option<Moebius>> {
    if g1.compose(h1) != g2.compose(h2) {
        return Err(Error::CompositionsDiffer);
    }
    let ctx = g1.ctx();
    ensure_unit_enumerable(ctx)?;
    for u in enumerate_gamma(ctx, GammaKind::Full).elements() {
        if u.apply_left(h2) == *h1 {
            debug_assert_eq!(g2.compose(&u.inverse().to_ratfunc()), *g1);
            return Ok(Some(u.clone()));
        }
    }
    Ok(None)
}

/// A polynomial is tame when the characteristic does not divide its degree.
pub fn is_tame(f: &RatFunc) -> Result<bool> {
    if !f.is_polynomial() {
        return Err(Error::NotAPolynomial);
    }
    assert!(!f.is_constant(), "tameness of a constant");
    Ok(!(f.degree() as u64).is_multiple_of(f.ctx().p()))
}

/// Checks the three defining conditions of a bidecomposition exactly:
/// f1 ∘ g1 = f2 ∘ g2, gcd(deg f1, deg g1) = 1, and deg f1 = deg g2.
pub fn is_bidecomposition(f1: &RatFunc, g1: &RatFunc, f2: &RatFunc, g2: &RatFunc) -> bool {
    for p in [f1, g1, f2, g2] {
        assert!(
            p.is_polynomial() && !p.is_constant(),
            "bidecompositions are built from nonconstant polynomials"
        );
    }
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    f1.compose(g1) == f2.compose(g2)
        && gcd(f1.degree(), g1.degree()) == 1
        && f1.degree() == g2.degree()
}

/// A validated 4-tuple f1 ∘ g1 = f2 ∘ g2 with coprime inner degrees and
/// deg f1 = deg g2 — the exchange pattern relating complete chains of a
/// tame polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bidecomposition {
    pub f1: RatFunc,
    pub g1: RatFunc,
    pub f2: RatFunc,
    pub g2: RatFunc,
}

impl Bidecomposition {
    /// None when the defining conditions do not hold.
    pub fn try_new(f1: RatFunc, g1: RatFunc, f2: RatFunc, g2: RatFunc) -> Option<Self> {
        is_bidecomposition(&f1, &g1, &f2, &g2).then_some(Bidecomposition { f1, g1, f2, g2 })
    }
}

/// Degree data of all complete decomposition chains of a polynomial.
#[derive(Clone, Debug)]
pub struct RittReport {
    pub tame: bool,
    /// Outermost-first degree sequence of each chain.
    pub degree_sequences: Vec<Vec<usize>>,
    pub all_same_length: bool,
    pub multisets_consistent: bool,
}

impl RittReport {
    /// The first-claim consistency: equal lengths and permuting multisets.
    pub fn consistent(&self) -> bool {
        self.all_same_length && self.multisets_consistent
    }
}

/// Computes all complete decompositions of a polynomial and reports whether
/// their degree sequences are permutations of each other. For tame inputs
/// this is asserted by the classical theory; for wild inputs the report is
/// descriptive only.
pub fn ritt_degree_consistent(f: &RatFunc, limits: &SearchLimits) -> Result<RittReport> {
    if !f.is_polynomial() {
        return Err(Error::NotAPolynomial);
    }
    let tame = is_tame(f)?;
    let chains = complete_decompositions(f, limits)?;
    let degree_sequences: Vec<Vec<usize>> = chains.iter().map(|c| c.degrees()).collect();
    let all_same_length = degree_sequences
        .windows(2)
        .all(|w| w[0].len() == w[1].len());
    let mut sorted: Vec<Vec<usize>> = degree_sequences
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    sorted.dedup();
    let multisets_consistent = sorted.len() <= 1;
    Ok(RittReport {
        tame,
        degree_sequences,
        all_same_length,
        multisets_consistent,
    })
}
