//! Exact arithmetic in F_{p^m}.
//!
//! Elements are stored as a single packed integer `c_0 + c_1 p + ... +
//! c_{m-1} p^{m-1}` where `(c_0, ..., c_{m-1})` are the coordinates in the
//! basis `1, t, ..., t^{m-1}` of F_p[t] modulo a fixed monic irreducible
//! polynomial. The packed form makes equality, hashing and the canonical
//! element order structural, which everything above this module relies on.
//!
//! Fields are deliberately desk-scale: the modulus is found by exhaustive
//! search and several callers enumerate all of PGL(2,q), so construction is
//! capped at [`MAX_FIELD_SIZE`].

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Largest supported field cardinality. Irreducibility testing and the unit
/// group enumerations above this module are exhaustive, so q stays small.
pub const MAX_FIELD_SIZE: u64 = 4096;

const MAX_M: usize = 12;

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    p: u64,
    m: usize,
    q: u64,
    /// Monic irreducible modulus over F_p, constant term first, length m+1.
    modulus: Vec<u64>,
}

/// The coefficient field F_{p^m} with a fixed modulus.
///
/// Cloning is cheap (shared data) and all operations are pure, so a context
/// can be used concurrently without synchronization.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldData>);

/// An element of F_{p^m} in canonical packed form.
///
/// All arithmetic goes through the owning [`FieldCtx`]. The derived `Ord`
/// is the canonical element order: packed coordinate value, i.e. the
/// enumeration order of [`FieldCtx::elements`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(u64);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FieldCtx {}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(q={}, modulus={})",
            self.q(),
            self.modulus_string()
        )
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m() == 1 {
            write!(f, "F_{}", self.q())
        } else {
            write!(
                f,
                "F_{} = F_{}[t]/({})",
                self.q(),
                self.p(),
                self.modulus_string()
            )
        }
    }
}

fn is_prime(n: u64) -> bool {
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

// Dense polynomial helpers over F_p, used only for modulus selection.
// Coefficient vectors are constant-term first with no trailing zeros.
mod fp_poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Remainder of a by b (b monic), both over F_p.
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*b.last().unwrap(), 1);
        let mut r = a.to_vec();
        while r.len() >= b.len() {
            let lead = *r.last().unwrap();
            let shift = r.len() - b.len();
            if lead != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    let idx = shift + i;
                    r[idx] = (r[idx] + (p - bc % p) * lead) % p;
                }
            }
            r.pop();
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    /// Exhaustive irreducibility test: no monic factor of degree 1..=deg/2.
    pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
        let deg = poly.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            // All monic polynomials of degree d over F_p.
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut f = Vec::with_capacity(d + 1);
                let mut n = idx;
                for _ in 0..d {
                    f.push(n % p);
                    n /= p;
                }
                f.push(1);
                if rem(poly, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds F_{p^m} with the deterministic default modulus: the monic
    /// irreducible of degree m whose coefficient vector (c_0, ..., c_{m-1}),
    /// read constant-term first, is lexicographically smallest.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 || m > MAX_M {
            return Err(Error::FieldTooLarge {
                q: q.min(u64::MAX as u128) as u64,
                bound: MAX_FIELD_SIZE,
            });
        }
        let q = q as u64;
        if m == 1 {
            // Prime field; the modulus is t itself.
            return Ok(FieldCtx(Arc::new(FieldData {
                p,
                m,
                q,
                modulus: vec![0, 1],
            })));
        }
        // Lexicographic search over (c_0, ..., c_{m-1}); c_0 is the most
        // significant position of the comparison.
        for n in 0..q {
            let mut coeffs = vec![0u64; m + 1];
            let mut rest = n;
            for i in (0..m).rev() {
                coeffs[i] = rest % p;
                rest /= p;
            }
            coeffs[m] = 1;
            if fp_poly::is_irreducible(&coeffs, p) {
                return Ok(FieldCtx(Arc::new(FieldData {
                    p,
                    m,
                    q,
                    modulus: coeffs,
                })));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    /// Builds F_{p^m} with a caller-supplied modulus (constant term first).
    pub fn with_modulus(p: u64, m: usize, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 || m > MAX_M {
            return Err(Error::FieldTooLarge {
                q: q.min(u64::MAX as u128) as u64,
                bound: MAX_FIELD_SIZE,
            });
        }
        let mut coeffs: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        fp_poly::trim(&mut coeffs);
        let shown = poly_in_t_string(&coeffs);
        if coeffs.len() != m + 1 || *coeffs.last().unwrap() != 1 {
            return Err(Error::BadModulus {
                expected: m,
                got: shown,
            });
        }
        if !fp_poly::is_irreducible(&coeffs, p) {
            return Err(Error::ReducibleModulus(shown));
        }
        Ok(FieldCtx(Arc::new(FieldData {
            p,
            m,
            q: q as u64,
            modulus: coeffs,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// The modulus polynomial, constant term first, length m+1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        poly_in_t_string(&self.0.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        debug_assert!(self.q() >= 2);
        FieldElement(1)
    }

    /// The class of t, i.e. the generator of the polynomial basis.
    /// Only meaningful for m >= 2 (over a prime field this is just p = 0).
    pub fn t(&self) -> FieldElement {
        assert!(self.m() >= 2, "t is not an element of a prime field");
        FieldElement(self.p())
    }

    /// Embeds an integer via reduction mod p.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        FieldElement(n.rem_euclid(p) as u64)
    }

    /// Element with the given packed index in [0, q).
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(
            index < self.q(),
            "element index {index} out of range for {self}"
        );
        FieldElement(index)
    }

    /// Builds an element from coordinates (constant first, at most m).
    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        assert!(coords.len() <= self.m(), "too many coordinates for {self}");
        let p = self.p();
        let mut v = 0;
        for &c in coords.iter().rev() {
            assert!(c < p, "coordinate {c} out of range mod {p}");
            v = v * p + c;
        }
        FieldElement(v)
    }

    /// All q elements in canonical order (packed coordinate value).
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q()).map(FieldElement).collect()
    }

    /// Coordinates of a in the basis 1, t, ..., t^{m-1}, constant first.
    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        let p = self.p();
        let mut v = a.0;
        (0..self.m())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    fn check(&self, a: FieldElement) {
        assert!(
            a.0 < self.q(),
            "element {} does not belong to {}",
            a.0,
            self
        );
    }

    pub fn is_zero(&self, a: FieldElement) -> bool {
        self.check(a);
        a.0 == 0
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.p();
        if self.m() == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let mut v = 0;
        let (mut x, mut y) = (a.0, b.0);
        let mut base = 1;
        for _ in 0..self.m() {
            v += ((x % p + y % p) % p) * base;
            x /= p;
            y /= p;
            base *= p;
        }
        FieldElement(v)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let p = self.p();
        if self.m() == 1 {
            return FieldElement((p - a.0) % p);
        }
        let mut v = 0;
        let mut x = a.0;
        let mut base = 1;
        for _ in 0..self.m() {
            v += ((p - x % p) % p) * base;
            x /= p;
            base *= p;
        }
        FieldElement(v)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.p();
        let m = self.m();
        if m == 1 {
            return FieldElement((a.0 * b.0) % p);
        }
        // Schoolbook product of coordinate vectors, then reduction by the
        // monic modulus.
        let mut xa = [0u64; MAX_M];
        let mut xb = [0u64; MAX_M];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..m {
            xa[i] = x % p;
            xb[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_M];
        for i in 0..m {
            if xa[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + xa[i] * xb[j]) % p;
            }
        }
        let modulus = &self.0.modulus;
        for k in (m..=2 * m - 2).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for j in 0..m {
                    prod[k - m + j] = (prod[k - m + j] + (p - modulus[j]) * c) % p;
                }
            }
        }
        let mut v = 0;
        for i in (0..m).rev() {
            v = v * p + prod[i];
        }
        FieldElement(v)
    }

    pub fn try_inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^{q-2}. Fine at desk scale.
        Ok(self.pow(a, self.q() as i64 - 2))
    }

    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.try_inv(a).expect("inversion of zero")
    }

    pub fn try_div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.try_inv(b)?))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.try_div(a, b).expect("division by zero")
    }

    /// a^e with e possibly negative (inverts first; panics on 0^negative).
    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        let (mut base, mut e) = if e < 0 {
            (self.inv(a), e.unsigned_abs())
        } else {
            (a, e as u64)
        };
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Formats an element as a polynomial in t, e.g. "t+1" or "2".
    pub fn element_string(&self, a: FieldElement) -> String {
        self.check(a);
        let coords = self.coords(a);
        poly_in_t_string(&coords)
    }
}

impl FieldElement {
    /// Packed index in [0, q): the canonical enumeration position.
    pub fn index(&self) -> u64 {
        self.0
    }
}

fn poly_in_t_string(coords: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (k, &c) in coords.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (k, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}*t"),
            (k, 1) => format!("t^{k}"),
            (k, c) => format!("{c}*t^{k}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
