//! Dense polynomials and reduced rational functions over F_q.
//!
//! A [`RatFunc`] is kept in canonical form: numerator and denominator
//! coprime, denominator monic, with the scalar carried by the numerator's
//! leading coefficient. Structural equality of canonical forms is equality
//! of the functions, and the derived order (degree, then denominator, then
//! numerator, coefficients compared constant-term first) is the canonical
//! order used for deterministic output everywhere in the crate.
//!
//! Composition `g.compose(&h)` is the semigroup operation on nonconstant
//! functions; constants are representable (they show up as intermediate
//! symmetric-function values) but composing them panics.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::linalg;
use std::cmp::Ordering;
use std::fmt;

/// Dense polynomial, constant term first, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(ctx: FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|&c| ctx.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Poly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Poly {
            ctx: ctx.clone(),
            coeffs: vec![ctx.one()],
        }
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElement) -> Self {
        Poly::new(ctx.clone(), vec![c])
    }

    /// The identity polynomial x.
    pub fn x(ctx: &FieldCtx) -> Self {
        Poly {
            ctx: ctx.clone(),
            coeffs: vec![ctx.zero(), ctx.one()],
        }
    }

    /// c * x^k.
    pub fn monomial(ctx: &FieldCtx, c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(ctx.clone(), coeffs)
    }

    /// Convenience constructor from integer coefficients, constant first.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Poly::new(
            ctx.clone(),
            coeffs.iter().map(|&c| ctx.from_int(c)).collect(),
        )
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.ctx.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElement {
        self.coeffs
            .last()
            .copied()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == self.ctx.one()
    }

    fn assert_same_ctx(&self, other: &Poly) {
        assert!(self.ctx == other.ctx, "mixed field contexts");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ctx.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(self.ctx.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect();
        Poly {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let ctx = &self.ctx;
        let mut coeffs = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if ctx.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ctx.add(coeffs[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(ctx.clone(), coeffs)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let ctx = &self.ctx;
        if ctx.is_zero(c) {
            return Poly::zero(ctx);
        }
        let coeffs = self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect();
        Poly::new(ctx.clone(), coeffs)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.assert_same_ctx(divisor);
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let ctx = &self.ctx;
        let dd = divisor.degree().unwrap();
        let lead_inv = ctx.inv(divisor.lc());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ctx.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = ctx.mul(*rem.last().unwrap(), lead_inv);
            if !ctx.is_zero(factor) {
                quot[shift] = factor;
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = ctx.sub(rem[shift + i], ctx.mul(factor, c));
                }
            }
            rem.pop();
            while rem.last().is_some_and(|&c| ctx.is_zero(c)) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        (Poly::new(ctx.clone(), quot), Poly::new(ctx.clone(), rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.ctx.inv(self.lc()))
    }

    pub fn derivative(&self) -> Poly {
        let ctx = &self.ctx;
        if self.coeffs.len() <= 1 {
            return Poly::zero(ctx);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| ctx.mul(ctx.from_int(k as i64), c))
            .collect();
        Poly::new(ctx.clone(), coeffs)
    }

    pub fn eval(&self, at: FieldElement) -> FieldElement {
        let ctx = &self.ctx;
        let mut acc = ctx.zero();
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, at), c);
        }
        acc
    }

    /// Polynomial composition self(other) by Horner's rule. This is the
    /// independent route used by tests to cross-check [`RatFunc::compose`].
    pub fn compose_poly(&self, other: &Poly) -> Poly {
        self.assert_same_ctx(other);
        let mut acc = Poly::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&Poly::constant(&self.ctx, c));
        }
        acc
    }

    /// Roots in F_q found by exhaustive evaluation.
    pub fn roots(&self) -> Vec<FieldElement> {
        self.ctx
            .elements()
            .into_iter()
            .filter(|&a| self.ctx.is_zero(self.eval(a)))
            .collect()
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Canonical order: degree first, then coefficients compared
    /// constant-term first by packed element value.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Reduced rational function f_N / f_D with gcd(f_N, f_D) = 1 and monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Canonicalizes num/den: divides out the gcd and makes den monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        num.assert_same_ctx(&den);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let ctx = num.ctx().clone();
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() || num.is_zero() {
            if num.is_zero() {
                (num, Poly::one(&ctx))
            } else {
                (num, den)
            }
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        if !den.is_monic() {
            let inv = ctx.inv(den.lc());
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.ctx());
        RatFunc { num: p, den: one }
    }

    /// The identity function x.
    pub fn x(ctx: &FieldCtx) -> Self {
        RatFunc::from_poly(Poly::x(ctx))
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElement) -> Self {
        RatFunc::from_poly(Poly::constant(ctx, c))
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// max(deg num, deg den); 0 exactly for constants.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// A unit of the composition semigroup is exactly a degree-1 function.
    pub fn is_unit(&self) -> bool {
        self.degree() == 1
    }

    /// deg num - deg den. Positive exactly when the function maps infinity
    /// to infinity (pole at infinity of order delta).
    pub fn delta(&self) -> i64 {
        self.num.degree().unwrap_or(0) as i64 - self.den.degree().unwrap_or(0) as i64
    }

    /// Value at infinity; None means the function has a pole there.
    pub fn value_at_infinity(&self) -> Option<FieldElement> {
        let ctx = self.ctx();
        match self.delta() {
            d if d > 0 => None,
            d if d < 0 => Some(ctx.zero()),
            _ => Some(ctx.div(self.num.lc(), self.den.lc())),
        }
    }

    // ---- field arithmetic on K(x) (used by the parser and the bivariate
    // gcd; distinct from the composition semigroup) ----

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn is_zero_fn(&self) -> bool {
        self.num.is_zero()
    }

    /// Power with respect to multiplication in K(x).
    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 {
            RatFunc::new(self.den.clone(), self.num.clone())?
        } else {
            self.clone()
        };
        let mut acc = RatFunc::from_poly(Poly::one(self.ctx()));
        let mut e = e.unsigned_abs();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    // ---- composition semigroup ----

    /// g(h). Panics if either function is constant; the degree of the
    /// result is deg g * deg h.
    pub fn compose(&self, h: &RatFunc) -> RatFunc {
        assert!(
            !self.is_constant() && !h.is_constant(),
            "composition of a constant"
        );
        self.substitute(h)
    }

    /// self(h) without the nonconstant requirement (internal uses need to
    /// substitute into constants during intermediate computations).
    pub fn substitute(&self, h: &RatFunc) -> RatFunc {
        self.num.assert_same_ctx(&h.num);
        let ctx = self.ctx();
        let e = self.degree();
        // Homogenize: sum a_i hN^i hD^{e-i} over hD^e.
        let hd_pows = power_table(&h.den, e);
        let num = homogeneous_eval(&self.num, &h.num, &hd_pows, e);
        let den = homogeneous_eval(&self.den, &h.num, &hd_pows, e);
        let _ = ctx;
        RatFunc::new(num, den).expect("denominator of a composition cannot vanish")
    }

    /// Composition inverse of a unit: the adjugate coefficient matrix.
    pub fn unit_inverse(&self) -> Result<RatFunc> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.degree()));
        }
        let ctx = self.ctx();
        // self = (a x + b) / (c x + d) -> inverse (d x - b) / (-c x + a).
        let a = self.num.coeff(1);
        let b = self.num.coeff(0);
        let c = self.den.coeff(1);
        let d = self.den.coeff(0);
        let num = Poly::new(ctx.clone(), vec![ctx.neg(b), d]);
        let den = Poly::new(ctx.clone(), vec![a, ctx.neg(c)]);
        RatFunc::new(num, den)
    }

    /// Exact left division: the unique g with g(h) = self, if one exists.
    ///
    /// With e = deg self / deg h, the unknown g = A/B is determined by the
    /// linear condition f_N * B_h - f_D * A_h = 0, where A_h and B_h are the
    /// homogenizations of A and B by h; the nullspace is computed by exact
    /// Gaussian elimination. Returns None when deg h does not divide
    /// deg self or no quotient exists.
    pub fn left_divide(&self, h: &RatFunc) -> Option<RatFunc> {
        assert!(
            !self.is_constant() && !h.is_constant(),
            "left division with a constant"
        );
        self.num.assert_same_ctx(&h.num);
        let df = self.degree();
        let dh = h.degree();
        if !df.is_multiple_of(dh) {
            return None;
        }
        let e = df / dh;
        let ctx = self.ctx().clone();

        // Basis polynomials P_i = hN^i * hD^{e-i}, i = 0..=e.
        let hd_pows = power_table(&h.den, e);
        let mut basis = Vec::with_capacity(e + 1);
        let mut hn_pow = Poly::one(&ctx);
        for i in 0..=e {
            basis.push(hn_pow.mul(&hd_pows[e - i]));
            if i < e {
                hn_pow = hn_pow.mul(&h.num);
            }
        }

        // Columns: for each a_i the polynomial -f_D * P_i, for each b_j the
        // polynomial f_N * P_j. Rows are coefficient indices.
        let col_polys: Vec<Poly> = basis
            .iter()
            .map(|p| self.den.mul(p).neg())
            .chain(basis.iter().map(|p| self.num.mul(p)))
            .collect();
        let nrows = col_polys.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
        let ncols = col_polys.len();
        let mut rows = vec![vec![ctx.zero(); ncols]; nrows];
        for (j, p) in col_polys.iter().enumerate() {
            for (i, &c) in p.coeffs().iter().enumerate() {
                rows[i][j] = c;
            }
        }

        let null = linalg::nullspace(&ctx, rows, ncols);
        if null.is_empty() {
            return None;
        }
        // Uniqueness of the quotient makes the solution space a line.
        debug_assert_eq!(null.len(), 1, "left quotient must be unique");
        let v = &null[0];
        let a = Poly::new(ctx.clone(), v[..=e].to_vec());
        let b = Poly::new(ctx.clone(), v[e + 1..].to_vec());
        if b.is_zero() {
            return None;
        }
        let g = RatFunc::new(a, b).ok()?;
        if g.is_constant() {
            return None;
        }
        debug_assert_eq!(g.substitute(h), *self);
        Some(g)
    }
}

/// Replaces (g, h) by the equivalent pair (g∘u, u⁻¹∘h) so that both
/// components fix infinity; requires that the composition itself does.
/// On the normalized pair the pole orders at infinity multiply:
/// delta(g∘h) = delta(g') * delta(h').
pub fn normalize_at_infinity(g: &RatFunc, h: &RatFunc) -> Result<(RatFunc, RatFunc)> {
    let f = g.compose(h);
    if f.delta() <= 0 {
        return Err(Error::DeltaNotPositive);
    }
    match h.value_at_infinity() {
        None => Ok((g.clone(), h.clone())),
        Some(w) => {
            let ctx = g.ctx();
            // u = w + 1/x, u^{-1} = 1/(x - w).
            let u = RatFunc::new(Poly::new(ctx.clone(), vec![ctx.one(), w]), Poly::x(ctx))?;
            let u_inv = u.unit_inverse()?;
            Ok((g.compose(&u), u_inv.compose(h)))
        }
    }
}

/// Powers base^0 ..= base^n.
fn power_table(base: &Poly, n: usize) -> Vec<Poly> {
    let mut pows = Vec::with_capacity(n + 1);
    pows.push(Poly::one(base.ctx()));
    for i in 1..=n {
        pows.push(pows[i - 1].mul(base));
    }
    pows
}

/// sum coeffs[i] * hn^i * hd_pows[e-i], evaluated Horner style in hn.
fn homogeneous_eval(p: &Poly, hn: &Poly, hd_pows: &[Poly], e: usize) -> Poly {
    let ctx = p.ctx();
    let mut acc = Poly::zero(ctx);
    for i in (0..=e).rev() {
        acc = acc.mul(hn);
        let c = p.coeff(i);
        if !ctx.is_zero(c) {
            acc = acc.add(&hd_pows[e - i].scale(c));
        }
    }
    acc
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    /// Canonical order: degree, then denominator, then numerator. Among
    /// functions of the same degree this sorts polynomials first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.den.cmp(&other.den))
            .then_with(|| self.num.cmp(&other.num))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- display ----

fn coeff_string(ctx: &FieldCtx, c: FieldElement) -> (bool, String) {
    // Returns (needs no explicit factor, printed form). Extension-field
    // coefficients with more than one term get parenthesized.
    let s = ctx.element_string(c);
    if c == ctx.one() {
        (true, s)
    } else if s.contains('+') {
        (false, format!("({s})"))
    } else {
        (false, s)
    }
}

fn poly_term(ctx: &FieldCtx, c: FieldElement, k: usize) -> String {
    let (is_one, cs) = coeff_string(ctx, c);
    match (k, is_one) {
        (0, _) => cs,
        (1, true) => "x".to_string(),
        (1, false) => format!("{cs}*x"),
        (_, true) => format!("x^{k}"),
        (_, false) => format!("{cs}*x^{k}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| !self.ctx.is_zero(c))
            .map(|(k, &c)| poly_term(&self.ctx, c, k))
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl RatFunc {
    fn is_single_term(p: &Poly) -> bool {
        p.coeffs.iter().filter(|&&c| !p.ctx.is_zero(c)).count() <= 1
            && !p.to_string().starts_with('(')
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num = if Self::is_single_term(&self.num) {
            self.num.to_string()
        } else {
            format!("({})", self.num)
        };
        let den = if Self::is_single_term(&self.den) {
            self.den.to_string()
        } else {
            format!("({})", self.den)
        };
        write!(f, "{num}/{den}")
    }
}

/// Random nonconstant function with numerator/denominator degree at most
/// `max_deg`; test-only helper shared by the unit tests of several modules.
#[cfg(test)]
pub(crate) fn random_ratfunc(ctx: &FieldCtx, rng: &mut impl rand::Rng, max_deg: usize) -> RatFunc {
    loop {
        let d = rng.random_range(1..=max_deg);
        let num: Vec<FieldElement> = (0..=d)
            .map(|_| ctx.element(rng.random_range(0..ctx.q())))
            .collect();
        let den: Vec<FieldElement> = (0..=rng.random_range(0..=d))
            .map(|_| ctx.element(rng.random_range(0..ctx.q())))
            .collect();
        let num = Poly::new(ctx.clone(), num);
        let den = Poly::new(ctx.clone(), den);
        if den.is_zero() {
            continue;
        }
        let r = RatFunc::new(num, den).unwrap();
        if !r.is_constant() {
            return r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, m: usize) -> FieldCtx {
        FieldCtx::new(p, m).unwrap()
    }

    #[test]
    fn normalize_cancels_and_makes_den_monic() {
        let f2 = f(2, 1);
        // (x^2+x)/x -> x+1
        let r = RatFunc::new(
            Poly::from_ints(&f2, &[0, 1, 1]),
            Poly::from_ints(&f2, &[0, 1]),
        )
        .unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::from_ints(&f2, &[1, 1])));
        assert!(r.is_polynomial());

        // x/1 stays x
        let x = RatFunc::x(&f2);
        assert_eq!(RatFunc::new(Poly::x(&f2), Poly::one(&f2)).unwrap(), x);

        // x^2/(2x) over F_5 -> 3x
        let f5 = f(5, 1);
        let r = RatFunc::new(
            Poly::from_ints(&f5, &[0, 0, 1]),
            Poly::from_ints(&f5, &[0, 2]),
        )
        .unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::from_ints(&f5, &[0, 3])));

        assert_eq!(
            RatFunc::new(Poly::x(&f5), Poly::zero(&f5)).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn degree_is_max_of_num_and_den() {
        let f2 = f(2, 1);
        let h2 = RatFunc::new(
            Poly::from_ints(&f2, &[1, 1, 0, 1]),
            Poly::from_ints(&f2, &[0, 0, 1]),
        )
        .unwrap();
        assert_eq!(h2.degree(), 3);
        assert_eq!(RatFunc::constant(&f2, f2.one()).degree(), 0);
        let u = RatFunc::new(Poly::from_ints(&f2, &[1, 1]), Poly::from_ints(&f2, &[0, 1])).unwrap();
        assert_eq!(u.degree(), 1);
        assert!(u.is_unit());
    }

    #[test]
    fn composition_examples() {
        // x^2 ∘ (x^3 - x) = x^6 + x^4 + x^2 over F_3
        let f3 = f(3, 1);
        let sq = RatFunc::from_poly(Poly::from_ints(&f3, &[0, 0, 1]));
        let add = RatFunc::from_poly(Poly::from_ints(&f3, &[0, -1, 0, 1]));
        let p3 = sq.compose(&add);
        assert_eq!(
            p3,
            RatFunc::from_poly(Poly::from_ints(&f3, &[0, 0, 1, 0, 1, 0, 1]))
        );

        // neutral element
        let x = RatFunc::x(&f3);
        assert_eq!(x.compose(&p3), p3);
        assert_eq!(p3.compose(&x), p3);

        // x^2 ∘ (x^2+x) = x^4 + x^2 over F_2
        let f2 = f(2, 1);
        let sq2 = RatFunc::from_poly(Poly::from_ints(&f2, &[0, 0, 1]));
        let a = RatFunc::from_poly(Poly::from_ints(&f2, &[0, 1, 1]));
        assert_eq!(
            sq2.compose(&a),
            RatFunc::from_poly(Poly::from_ints(&f2, &[0, 0, 1, 0, 1]))
        );
    }

    #[test]
    #[should_panic(expected = "composition of a constant")]
    fn composing_a_constant_panics() {
        let f2 = f(2, 1);
        let c = RatFunc::constant(&f2, f2.one());
        let _ = c.compose(&RatFunc::x(&f2));
    }

    #[test]
    fn unit_inverse_examples() {
        let f2 = f(2, 1);
        // (x+1)/x -> 1/(x+1)
        let u = RatFunc::new(Poly::from_ints(&f2, &[1, 1]), Poly::x(&f2)).unwrap();
        let v = u.unit_inverse().unwrap();
        assert_eq!(
            v,
            RatFunc::new(Poly::one(&f2), Poly::from_ints(&f2, &[1, 1])).unwrap()
        );
        assert_eq!(u.compose(&v), RatFunc::x(&f2));
        assert_eq!(v.compose(&u), RatFunc::x(&f2));

        // x + b -> x - b
        let f5 = f(5, 1);
        let u = RatFunc::from_poly(Poly::from_ints(&f5, &[2, 1]));
        assert_eq!(
            u.unit_inverse().unwrap(),
            RatFunc::from_poly(Poly::from_ints(&f5, &[-2, 1]))
        );

        // 2x -> 3x
        let u = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 2]));
        assert_eq!(
            u.unit_inverse().unwrap(),
            RatFunc::from_poly(Poly::from_ints(&f5, &[0, 3]))
        );

        let not_unit = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 1]));
        assert_eq!(not_unit.unit_inverse().unwrap_err(), Error::NotAUnit(2));
    }

    #[test]
    fn unit_group_inverse_exhaustive_small_q() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let ctx = f(p, m);
            let x = RatFunc::x(&ctx);
            let mut count = 0;
            for u in
                crate::moebius::enumerate_gamma(&ctx, crate::moebius::GammaKind::Full).elements()
            {
                let u = u.to_ratfunc();
                let v = u.unit_inverse().unwrap();
                assert_eq!(u.compose(&v), x);
                assert_eq!(v.compose(&u), x);
                count += 1;
            }
            let q = ctx.q();
            assert_eq!(count, (q * q * q - q) as usize);
        }
    }

    #[test]
    fn left_divide_examples() {
        let f5 = f(5, 1);
        let x4 = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 0, 1]));
        let x2 = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 1]));
        assert_eq!(x4.left_divide(&x2), Some(x2.clone()));

        let x3p1 = RatFunc::from_poly(Poly::from_ints(&f5, &[1, 0, 0, 1]));
        assert_eq!(x3p1.left_divide(&x2), None);

        // (x^2+x) ∘ (x^2+x) = x^4+x over F_4
        let f4 = f(2, 2);
        let h = RatFunc::from_poly(Poly::from_ints(&f4, &[0, 1, 1]));
        let target = RatFunc::from_poly(Poly::from_ints(&f4, &[0, 1, 0, 0, 1]));
        assert_eq!(h.compose(&h), target);
        assert_eq!(target.left_divide(&h), Some(h.clone()));
    }

    #[test]
    fn left_divide_roundtrip_randomized() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(7);
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2)] {
            let ctx = f(p, m);
            for _ in 0..30 {
                let g = random_ratfunc(&ctx, &mut rng, 3);
                let h = random_ratfunc(&ctx, &mut rng, 3);
                let composed = g.compose(&h);
                assert_eq!(composed.degree(), g.degree() * h.degree());
                assert_eq!(composed.left_divide(&h), Some(g.clone()));
            }
        }
    }

    #[test]
    fn normalize_at_infinity_examples() {
        let f2 = f(2, 1);
        let g = RatFunc::from_poly(Poly::from_ints(&f2, &[0, 0, 1]));
        let h = RatFunc::from_poly(Poly::from_ints(&f2, &[0, 1, 1]));
        let (g2, h2) = normalize_at_infinity(&g, &h).unwrap();
        assert_eq!((g2.clone(), h2.clone()), (g, h)); // polynomials already fix infinity
        assert_eq!(g2.delta() * h2.delta(), 4);

        // g = x^2/(x-1), h = x/(x-1) over F_5: composition x^2/(x-1), delta 1.
        let f5 = f(5, 1);
        let g = RatFunc::new(
            Poly::from_ints(&f5, &[0, 0, 1]),
            Poly::from_ints(&f5, &[-1, 1]),
        )
        .unwrap();
        let h = RatFunc::new(
            Poly::from_ints(&f5, &[0, 1]),
            Poly::from_ints(&f5, &[-1, 1]),
        )
        .unwrap();
        let composed = g.compose(&h);
        assert_eq!(composed.delta(), 1);
        let (g2, h2) = normalize_at_infinity(&g, &h).unwrap();
        assert_eq!(g2.compose(&h2), composed);
        assert_eq!((g2.delta(), h2.delta()), (1, 1));

        // error when the composition does not fix infinity
        let inv = RatFunc::new(Poly::one(&f5), Poly::x(&f5)).unwrap();
        let sq = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 1]));
        assert_eq!(
            normalize_at_infinity(&inv, &sq).unwrap_err(),
            Error::DeltaNotPositive
        );
    }

    #[test]
    fn delta_multiplicativity_after_normalization() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(11);
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1)] {
            let ctx = f(p, m);
            let mut checked = 0;
            while checked < 20 {
                let g = random_ratfunc(&ctx, &mut rng, 3);
                let h = random_ratfunc(&ctx, &mut rng, 3);
                let composed = g.compose(&h);
                if composed.delta() <= 0 {
                    continue;
                }
                let (g2, h2) = normalize_at_infinity(&g, &h).unwrap();
                assert_eq!(composed.delta(), g2.delta() * h2.delta());
                assert!(1 <= g2.delta() && g2.delta() <= g2.degree() as i64);
                assert!(1 <= h2.delta() && h2.delta() <= h2.degree() as i64);
                checked += 1;
            }
        }
    }

    #[test]
    fn positive_delta_means_pole_at_infinity() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1)] {
            let ctx = f(p, m);
            for _ in 0..40 {
                let r = random_ratfunc(&ctx, &mut rng, 4);
                assert_eq!(r.delta() > 0, r.value_at_infinity().is_none());
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let f3 = f(3, 1);
        let r = RatFunc::new(
            Poly::from_ints(&f3, &[0, 2, 2]),
            Poly::from_ints(&f3, &[0, 2]),
        )
        .unwrap();
        let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn display_forms() {
        let f3 = f(3, 1);
        let h3 = RatFunc::new(
            Poly::from_ints(&f3, &[1, 1, 0, 0, 1]),
            Poly::from_ints(&f3, &[0, 0, 0, 1]),
        )
        .unwrap();
        assert_eq!(h3.to_string(), "(x^4+x+1)/x^3");
        let f4 = f(2, 2);
        let p = Poly::new(f4.clone(), vec![f4.one(), f4.t(), f4.from_coords(&[1, 1])]);
        assert_eq!(p.to_string(), "(t+1)*x^2+t*x+1");
        let u = RatFunc::new(Poly::x(&f3), Poly::from_ints(&f3, &[1, 1])).unwrap();
        assert_eq!(u.to_string(), "x/(x+1)");
    }
}
