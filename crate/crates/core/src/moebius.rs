//! The unit group Γ(F_q) ≅ PGL(2,q) and its subgroup lattice.
//!
//! A [`Moebius`] is stored as the canonical projective representative of
//! (ax+b)/(cx+d): the tuple (a, b, c, d) scaled so its first nonzero entry
//! is 1. That makes equality, hashing and ordering structural, so subgroups
//! are plain sorted element sets.
//!
//! Subgroup enumeration is exhaustive bottom-up join closure over a
//! precomputed multiplication table, with subgroups held as index bitsets.
//! This is quadratic-ish in the number of subgroups and perfectly fine for
//! the desk-scale groups this crate targets (|G| <= 200 by default).

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::par::{self, ExecMode};
use crate::ratfunc::{Poly, RatFunc};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

/// Callers that scan all of Γ(F_q) refuse to run past this many units.
pub const UNIT_ENUM_BOUND: u64 = 100_000;

/// q^3 - q, the order of Γ(F_q).
pub fn gamma_order(q: u64) -> u64 {
    q * q * q - q
}

pub(crate) fn ensure_unit_enumerable(ctx: &FieldCtx) -> Result<()> {
    let count = gamma_order(ctx.q());
    if count > UNIT_ENUM_BOUND {
        return Err(Error::UnitEnumerationTooLarge {
            q: ctx.q(),
            count,
            bound: UNIT_ENUM_BOUND,
        });
    }
    Ok(())
}

/// A unit of K(x) under composition, (ax+b)/(cx+d) with ad-bc != 0, kept as
/// the canonical projective representative.
#[derive(Clone)]
pub struct Moebius {
    ctx: FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl Moebius {
    pub fn new(
        ctx: &FieldCtx,
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Result<Self> {
        let det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c));
        if ctx.is_zero(det) {
            return Err(Error::SingularMoebius);
        }
        let mut m = Moebius {
            ctx: ctx.clone(),
            a,
            b,
            c,
            d,
        };
        m.canonicalize();
        Ok(m)
    }

    fn canonicalize(&mut self) {
        let ctx = self.ctx.clone();
        let first = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|&x| !ctx.is_zero(x))
            .expect("nonsingular matrix has a nonzero entry");
        if first != ctx.one() {
            let inv = ctx.inv(first);
            self.a = ctx.mul(self.a, inv);
            self.b = ctx.mul(self.b, inv);
            self.c = ctx.mul(self.c, inv);
            self.d = ctx.mul(self.d, inv);
        }
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        Moebius {
            ctx: ctx.clone(),
            a: ctx.one(),
            b: ctx.zero(),
            c: ctx.zero(),
            d: ctx.one(),
        }
    }

    /// The inversion 1/x.
    pub fn inversion(ctx: &FieldCtx) -> Self {
        Moebius {
            ctx: ctx.clone(),
            a: ctx.zero(),
            b: ctx.one(),
            c: ctx.one(),
            d: ctx.zero(),
        }
    }

    /// x + b.
    pub fn translation(ctx: &FieldCtx, b: FieldElement) -> Self {
        Moebius {
            ctx: ctx.clone(),
            a: ctx.one(),
            b,
            c: ctx.zero(),
            d: ctx.one(),
        }
    }

    /// a x, a != 0.
    pub fn scaling(ctx: &FieldCtx, a: FieldElement) -> Result<Self> {
        Moebius::new(ctx, a, ctx.zero(), ctx.zero(), ctx.one())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> (FieldElement, FieldElement, FieldElement, FieldElement) {
        (self.a, self.b, self.c, self.d)
    }

    fn key(&self) -> (u64, u64, u64, u64) {
        (
            self.a.index(),
            self.b.index(),
            self.c.index(),
            self.d.index(),
        )
    }

    /// Composition u ∘ v, i.e. the matrix product.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let x = &self.ctx;
        let a = x.add(x.mul(self.a, other.a), x.mul(self.b, other.c));
        let b = x.add(x.mul(self.a, other.b), x.mul(self.b, other.d));
        let c = x.add(x.mul(self.c, other.a), x.mul(self.d, other.c));
        let d = x.add(x.mul(self.c, other.b), x.mul(self.d, other.d));
        let mut m = Moebius {
            ctx: x.clone(),
            a,
            b,
            c,
            d,
        };
        m.canonicalize();
        m
    }

    /// Composition inverse (the adjugate matrix).
    pub fn inverse(&self) -> Moebius {
        let x = &self.ctx;
        let mut m = Moebius {
            ctx: x.clone(),
            a: self.d,
            b: x.neg(self.b),
            c: x.neg(self.c),
            d: self.a,
        };
        m.canonicalize();
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Moebius::identity(&self.ctx)
    }

    /// True when the function is a polynomial ax + b.
    pub fn is_affine(&self) -> bool {
        self.ctx.is_zero(self.c)
    }

    pub fn is_translation(&self) -> bool {
        self.is_affine() && self.a == self.d
    }

    /// The slope a of an affine unit ax + b.
    pub fn affine_multiplier(&self) -> Option<FieldElement> {
        self.is_affine().then(|| self.ctx.div(self.a, self.d))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let num = Poly::new(self.ctx.clone(), vec![self.b, self.a]);
        let den = Poly::new(self.ctx.clone(), vec![self.d, self.c]);
        RatFunc::new(num, den).expect("unit denominator is nonzero")
    }

    pub fn from_ratfunc(r: &RatFunc) -> Result<Self> {
        if !r.is_unit() {
            return Err(Error::NotAUnit(r.degree()));
        }
        Moebius::new(
            r.ctx(),
            r.num().coeff(1),
            r.num().coeff(0),
            r.den().coeff(1),
            r.den().coeff(0),
        )
    }

    /// u ∘ f for a rational function f: (a f_N + b f_D) / (c f_N + d f_D).
    pub fn apply_left(&self, f: &RatFunc) -> RatFunc {
        let num = f.num().scale(self.a).add(&f.den().scale(self.b));
        let den = f.num().scale(self.c).add(&f.den().scale(self.d));
        RatFunc::new(num, den).expect("unit action keeps the denominator nonzero")
    }
}

impl PartialEq for Moebius {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Moebius {}

impl PartialOrd for Moebius {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Moebius {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Moebius {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which standard subgroup of Γ to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaKind {
    /// All q^3 - q units.
    Full,
    /// Γ_0 = {ax + b : a != 0}, q(q-1) elements.
    Affine,
    /// H_0 = {x + b}, q elements.
    Translations,
}

/// Enumerates Γ, Γ_0 or H_0 as a sorted subgroup.
pub fn enumerate_gamma(ctx: &FieldCtx, kind: GammaKind) -> Subgroup {
    let els = ctx.elements();
    let mut out = Vec::new();
    match kind {
        GammaKind::Full => {
            // Canonical representatives, generated already sorted:
            // a = 0 forces b = 1 and c != 0; a = 1 leaves b, c free and
            // d != bc.
            let zero = ctx.zero();
            let one = ctx.one();
            for &c in &els {
                if ctx.is_zero(c) {
                    continue;
                }
                for &d in &els {
                    out.push(Moebius {
                        ctx: ctx.clone(),
                        a: zero,
                        b: one,
                        c,
                        d,
                    });
                }
            }
            for &b in &els {
                for &c in &els {
                    let bc = ctx.mul(b, c);
                    for &d in &els {
                        if d != bc {
                            out.push(Moebius {
                                ctx: ctx.clone(),
                                a: one,
                                b,
                                c,
                                d,
                            });
                        }
                    }
                }
            }
            out.sort();
        }
        GammaKind::Affine => {
            for &a in &els {
                if ctx.is_zero(a) {
                    continue;
                }
                for &b in &els {
                    out.push(Moebius::new(ctx, a, b, ctx.zero(), ctx.one()).unwrap());
                }
            }
            out.sort();
        }
        GammaKind::Translations => {
            for &b in &els {
                out.push(Moebius::translation(ctx, b));
            }
            out.sort();
        }
    }
    Subgroup {
        ctx: ctx.clone(),
        elements: out,
    }
}

/// A finite subgroup of Γ as a canonically sorted, closed element set.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    ctx: FieldCtx,
    elements: Vec<Moebius>,
}

impl Subgroup {
    /// Validates closure, the identity, and Lagrange against |Γ|.
    pub fn from_elements(ctx: &FieldCtx, mut elements: Vec<Moebius>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let g = Subgroup {
            ctx: ctx.clone(),
            elements,
        };
        if !g.contains(&Moebius::identity(ctx)) || !g.is_closed() {
            return Err(Error::NotASubgroup);
        }
        if !gamma_order(ctx.q()).is_multiple_of(g.order() as u64) {
            return Err(Error::NotASubgroup);
        }
        Ok(g)
    }

    pub(crate) fn new_unchecked(ctx: &FieldCtx, elements: Vec<Moebius>) -> Self {
        debug_assert!(
            elements.windows(2).all(|w| w[0] < w[1]),
            "elements must be sorted"
        );
        let g = Subgroup {
            ctx: ctx.clone(),
            elements,
        };
        debug_assert!(g.is_closed());
        g
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Moebius] {
        &self.elements
    }

    pub fn contains(&self, m: &Moebius) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        for u in &self.elements {
            for v in &self.elements {
                if !self.contains(&u.compose(v)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<Moebius> = self
            .elements
            .iter()
            .filter(|m| other.contains(m))
            .cloned()
            .collect();
        Subgroup::new_unchecked(&self.ctx, elements)
    }

    /// Conjugate subgroup u^{-1} G u.
    pub fn conjugate(&self, u: &Moebius) -> Subgroup {
        let uinv = u.inverse();
        let mut elements: Vec<Moebius> = self
            .elements
            .iter()
            .map(|g| uinv.compose(g).compose(u))
            .collect();
        elements.sort();
        Subgroup::new_unchecked(&self.ctx, elements)
    }

    pub fn element_strings(&self) -> Vec<String> {
        self.elements.iter().map(|m| m.to_string()).collect()
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup{{order {}: {}}}",
            self.order(),
            self.element_strings().join(", ")
        )
    }
}

/// Smallest subgroup containing the generators (iterated product closure).
pub fn closure(ctx: &FieldCtx, generators: &[Moebius]) -> Subgroup {
    assert!(!generators.is_empty(), "closure of an empty generating set");
    let mut members: Vec<Moebius> = Vec::new();
    let mut seen: HashSet<(u64, u64, u64, u64)> = HashSet::new();
    let mut queue: VecDeque<Moebius> = VecDeque::new();
    queue.push_back(Moebius::identity(ctx));
    queue.extend(generators.iter().cloned());
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x.key()) {
            continue;
        }
        members.push(x.clone());
        for y in &members {
            queue.push_back(x.compose(y));
            queue.push_back(y.compose(&x));
        }
    }
    members.sort();
    Subgroup::new_unchecked(ctx, members)
}

// ---- lattice machinery ----

/// Options for exhaustive subgroup enumeration.
#[derive(Clone, Copy, Debug)]
pub struct LatticeOptions {
    /// Largest parent-group order the enumeration will accept.
    pub max_order: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions { max_order: 200 }
    }
}

/// Multiplication table over element indices; subgroup search works on
/// u16 indices and bitsets rather than Moebius sets.
pub(crate) struct GroupTable {
    pub elements: Vec<Moebius>,
    n: usize,
    mul: Vec<u16>,
    pub id: u16,
}

impl GroupTable {
    pub fn new(group: &Subgroup) -> Self {
        let elements = group.elements().to_vec();
        let n = elements.len();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = elements[i].compose(&elements[j]);
                let k = elements.binary_search(&prod).expect("group is closed");
                mul[i * n + j] = k as u16;
            }
        }
        let id = elements
            .binary_search(&Moebius::identity(group.ctx()))
            .expect("group contains the identity") as u16;
        GroupTable {
            elements,
            n,
            mul,
            id,
        }
    }

    #[inline]
    pub fn mul(&self, i: u16, j: u16) -> u16 {
        self.mul[i as usize * self.n + j as usize]
    }
}

/// Fixed-capacity index set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct IdxSet {
    blocks: Vec<u64>,
}

impl IdxSet {
    fn new(n: usize) -> Self {
        IdxSet {
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    fn insert(&mut self, i: u16) {
        self.blocks[i as usize / 64] |= 1 << (i as usize % 64);
    }

    #[inline]
    fn contains(&self, i: u16) -> bool {
        self.blocks[i as usize / 64] & (1 << (i as usize % 64)) != 0
    }

    fn union(&self, other: &IdxSet) -> IdxSet {
        IdxSet {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    fn is_subset(&self, other: &IdxSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    fn members(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.count());
        for (bi, &block) in self.blocks.iter().enumerate() {
            let mut b = block;
            while b != 0 {
                let bit = b.trailing_zeros() as usize;
                out.push((bi * 64 + bit) as u16);
                b &= b - 1;
            }
        }
        out
    }
}

/// Product closure of a seed set of element indices.
fn close_indices(table: &GroupTable, seed: &[u16]) -> IdxSet {
    let mut set = IdxSet::new(table.n);
    let mut members: Vec<u16> = Vec::new();
    let mut queue: VecDeque<u16> = VecDeque::new();
    queue.push_back(table.id);
    queue.extend(seed.iter().copied());
    while let Some(x) = queue.pop_front() {
        if set.contains(x) {
            continue;
        }
        set.insert(x);
        members.push(x);
        for &y in &members {
            let xy = table.mul(x, y);
            if !set.contains(xy) {
                queue.push_back(xy);
            }
            let yx = table.mul(y, x);
            if !set.contains(yx) {
                queue.push_back(yx);
            }
        }
    }
    set
}

/// The full subgroup lattice of a group, with covering edges.
#[derive(Debug)]
pub struct Lattice {
    group: Subgroup,
    nodes: Vec<Subgroup>,
    /// (i, j) means nodes[i] is covered by nodes[j] (no subgroup between).
    covers: Vec<(usize, usize)>,
    bottom: usize,
    top: usize,
}

/// A maximal chain {x} = G_0 < G_1 < ... < G_n = top; every step is a
/// covering relation, and the chain length is the number of groups n+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub indices: Vec<usize>,
}

impl Chain {
    pub fn group_count(&self) -> usize {
        self.indices.len()
    }
}

/// All subgroups of `group`, found bottom-up: every cyclic subgroup first,
/// then repeated pairwise joins until closed.
pub fn enumerate_subgroups(group: &Subgroup, opts: &LatticeOptions) -> Result<Lattice> {
    enumerate_subgroups_with(group, opts, ExecMode::default())
}

pub(crate) fn enumerate_subgroups_with(
    group: &Subgroup,
    opts: &LatticeOptions,
    mode: ExecMode,
) -> Result<Lattice> {
    if group.order() > opts.max_order {
        return Err(Error::GroupTooLarge {
            order: group.order(),
            bound: opts.max_order,
        });
    }
    let table = GroupTable::new(group);
    let n = group.order();

    let mut known: BTreeSet<IdxSet> = BTreeSet::new();
    for i in 0..n as u16 {
        known.insert(close_indices(&table, &[i]));
    }

    let mut frontier: Vec<IdxSet> = known.iter().cloned().collect();
    while !frontier.is_empty() {
        let all: Vec<IdxSet> = known.iter().cloned().collect();
        let mut pairs: Vec<(&IdxSet, &IdxSet)> = Vec::new();
        for a in &frontier {
            for b in &all {
                if !a.is_subset(b) && !b.is_subset(a) {
                    pairs.push((a, b));
                }
            }
        }
        let joined: Vec<IdxSet> = par::slice_filter_map(&pairs, mode, |(a, b)| {
            let seed = a.union(b).members();
            Some(close_indices(&table, &seed))
        });
        let mut next = Vec::new();
        for s in joined {
            if known.insert(s.clone()) {
                next.push(s);
            }
        }
        frontier = next;
    }

    // Deterministic node order: by order, then by member index list.
    let mut node_sets: Vec<(usize, Vec<u16>, IdxSet)> = known
        .into_iter()
        .map(|s| (s.count(), s.members(), s))
        .collect();
    node_sets.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let covers = covering_edges(&node_sets);
    let nodes: Vec<Subgroup> = node_sets
        .iter()
        .map(|(_, members, _)| {
            let elements: Vec<Moebius> = members
                .iter()
                .map(|&i| table.elements[i as usize].clone())
                .collect();
            Subgroup::new_unchecked(group.ctx(), elements)
        })
        .collect();

    let bottom = 0;
    let top = nodes.len() - 1;
    debug_assert_eq!(nodes[bottom].order(), 1);
    debug_assert_eq!(nodes[top].order(), group.order());
    Ok(Lattice {
        group: group.clone(),
        nodes,
        covers,
        bottom,
        top,
    })
}

fn covering_edges(nodes: &[(usize, Vec<u16>, IdxSet)]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if nodes[i].0 >= nodes[j].0 || !nodes[i].2.is_subset(&nodes[j].2) {
                continue;
            }
            let intermediate = (0..nodes.len()).any(|k| {
                k != i
                    && k != j
                    && nodes[i].0 < nodes[k].0
                    && nodes[k].0 < nodes[j].0
                    && nodes[i].2.is_subset(&nodes[k].2)
                    && nodes[k].2.is_subset(&nodes[j].2)
            });
            if !intermediate {
                covers.push((i, j));
            }
        }
    }
    covers
}

impl Lattice {
    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Every maximal chain from the trivial subgroup to the whole group.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for &(i, j) in &self.covers {
            up[i].push(j);
        }
        for list in &mut up {
            list.sort_unstable();
        }
        let mut chains = Vec::new();
        let mut path = vec![self.bottom];
        self.dfs_chains(&up, &mut path, &mut chains);
        chains
    }

    fn dfs_chains(&self, up: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Chain>) {
        let last = *path.last().unwrap();
        if last == self.top {
            out.push(Chain {
                indices: path.clone(),
            });
            return;
        }
        for &next in &up[last] {
            path.push(next);
            self.dfs_chains(up, path, out);
            path.pop();
        }
    }

    /// Multiset of chain lengths (group counts) as length -> multiplicity.
    pub fn chain_length_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for chain in self.maximal_chains() {
            *m.entry(chain.group_count()).or_insert(0) += 1;
        }
        m
    }

    pub fn export(&self) -> LatticeExport {
        let ctx = self.group.ctx();
        LatticeExport {
            field: FieldExport {
                p: ctx.p(),
                m: ctx.m(),
                modulus: ctx.modulus_string(),
            },
            group_order: self.group.order(),
            nodes: self
                .nodes
                .iter()
                .map(|g| LatticeNodeExport {
                    order: g.order(),
                    elements: g.element_strings(),
                })
                .collect(),
            covers: self.covers.iter().map(|&(i, j)| [i, j]).collect(),
            chain_group_counts: self.chain_length_multiset(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct FieldExport {
    pub p: u64,
    pub m: usize,
    pub modulus: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct LatticeNodeExport {
    pub order: usize,
    pub elements: Vec<String>,
}

/// JSON shape of a subgroup lattice: sorted element lists as function
/// strings plus covering edges.
#[derive(Serialize, Debug, Clone)]
pub struct LatticeExport {
    pub field: FieldExport,
    pub group_order: usize,
    pub nodes: Vec<LatticeNodeExport>,
    pub covers: Vec<[usize; 2]>,
    pub chain_group_counts: BTreeMap<usize, usize>,
}

// ---- affine structure ----

/// How a subgroup G <= Γ_0 decomposes against H_0 and the multiplier group.
#[derive(Clone, Debug)]
pub struct Gamma0Structure {
    pub order: usize,
    /// G ∩ H_0.
    pub translation_part: Subgroup,
    /// The multiplier group G_0 = {a : ax+b in G for some b}, sorted.
    pub multipliers: Vec<FieldElement>,
    /// Whether G splits as (G ∩ H_0) ⋊ G_0 (a complement subgroup exists).
    pub is_semidirect: bool,
    /// For prime q: which side of the dichotomy G falls on.
    pub prime_dichotomy: Option<PrimeDichotomy>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeDichotomy {
    /// H_0 ⊆ G, so G = H_0 ⋊ G_0.
    ContainsTranslations,
    /// G ∩ H_0 = {x} and G is cyclic, generated by some a_0 x + b_0.
    Cyclic { generator: Moebius },
}

/// Reports G ∩ H_0, the multiplier group, whether G splits over its
/// translation part, and (for prime q) the containment-or-cyclic dichotomy.
pub fn gamma0_structure(g: &Subgroup) -> Result<Gamma0Structure> {
    let ctx = g.ctx();
    if !g.elements().iter().all(|m| m.is_affine()) {
        return Err(Error::NotInGamma0);
    }
    let translations: Vec<Moebius> = g
        .elements()
        .iter()
        .filter(|m| m.is_translation())
        .cloned()
        .collect();
    let translation_part = Subgroup::new_unchecked(ctx, translations);

    let multipliers: BTreeSet<FieldElement> = g
        .elements()
        .iter()
        .map(|m| m.affine_multiplier().unwrap())
        .collect();
    let multipliers: Vec<FieldElement> = multipliers.into_iter().collect();

    // A complement, if one exists, can be taken cyclic because the
    // multiplier group is a subgroup of the cyclic F_q^*.
    let target = multipliers.len();
    let is_semidirect = g.order() == translation_part.order() * target
        && g.elements().iter().any(|el| {
            let cyc = closure(ctx, std::slice::from_ref(el));
            cyc.order() == target
                && cyc.elements().iter().filter(|m| m.is_translation()).count() == 1
        });

    let prime_dichotomy = if ctx.m() == 1 {
        if translation_part.order() as u64 == ctx.q() {
            // All the scalings with multipliers in G_0 must then lie in G.
            for &a in &multipliers {
                if !g.contains(&Moebius::scaling(ctx, a)?) {
                    return Err(Error::NotASubgroup);
                }
            }
            Some(PrimeDichotomy::ContainsTranslations)
        } else {
            let generator = g
                .elements()
                .iter()
                .find(|el| closure(ctx, std::slice::from_ref(el)).order() == g.order())
                .cloned()
                .ok_or(Error::NotASubgroup)?;
            Some(PrimeDichotomy::Cyclic { generator })
        }
    } else {
        None
    };

    Ok(Gamma0Structure {
        order: g.order(),
        translation_part,
        multipliers,
        is_semidirect,
        prime_dichotomy,
    })
}

// ---- canonical orbit representative ----

/// The lexicographically least element of the left unit orbit {u ∘ f}.
///
/// Equivalence classes of right components are unit orbits, so this is the
/// canonical representative used for deduplication and printed output. The
/// canonical order sorts polynomials before proper fractions, so a class
/// that contains polynomials is represented by one.
pub fn unit_orbit_min(f: &RatFunc) -> Result<RatFunc> {
    assert!(!f.is_constant(), "orbit of a constant");
    let ctx = f.ctx();
    ensure_unit_enumerable(ctx)?;
    let gamma = enumerate_gamma(ctx, GammaKind::Full);
    Ok(gamma
        .elements()
        .iter()
        .map(|u| u.apply_left(f))
        .min()
        .expect("unit group is nonempty"))
}
