//! Polynomials in y with coefficients in F_q[x], just enough for gcds in
//! K(x)[y]. The Euclidean loop is fraction-free (pseudo-remainders with
//! content stripping), which keeps coefficients polynomial instead of
//! dragging reduced fractions through every step; the result is normalized
//! to the monic gcd with RatFunc coefficients at the end.

use crate::ratfunc::{Poly, RatFunc};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct YPoly {
    /// coeffs[i] multiplies y^i; no trailing zero polynomials.
    coeffs: Vec<Poly>,
}

impl YPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in y; None for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Poly {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// The denominator-cleared minimal polynomial of x over K(f):
    /// f_D(x) f_N(y) - f_N(x) f_D(y).
    pub fn minpoly_cleared(f: &RatFunc) -> YPoly {
        let n = f.degree();
        let coeffs = (0..=n)
            .map(|i| {
                let a = f.den().scale(f.num().coeff(i));
                let b = f.num().scale(f.den().coeff(i));
                a.sub(&b)
            })
            .collect();
        YPoly::new(coeffs)
    }

    pub fn derivative_y(&self) -> YPoly {
        if self.coeffs.len() <= 1 {
            return YPoly { coeffs: Vec::new() };
        }
        let ctx = self.coeffs[0].ctx().clone();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(ctx.from_int(k as i64)))
            .collect();
        YPoly::new(coeffs)
    }

    /// Monic gcd of the coefficient polynomials.
    fn content(&self) -> Poly {
        let mut acc = self
            .coeffs
            .first()
            .cloned()
            .unwrap_or_else(|| panic!("content of the zero polynomial"));
        for c in &self.coeffs[1..] {
            acc = acc.gcd(c);
            if acc.is_one() {
                break;
            }
        }
        acc.monic()
    }

    /// Divides out the content (exact).
    fn primitive(&self) -> YPoly {
        if self.is_zero() {
            return self.clone();
        }
        let content = self.content();
        if content.is_one() {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.divrem(&content);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        YPoly::new(coeffs)
    }

    fn scale_coeffs(&self, by: &Poly) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|c| c.mul(by)).collect())
    }

    /// Fraction-free remainder: repeatedly cancels the leading term after
    /// scaling by the divisor's leading coefficient.
    fn pseudo_rem(&self, divisor: &YPoly) -> YPoly {
        let dd = divisor.degree().expect("division by zero");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lead = r.lead().clone();
            let shift = rd - dd;
            let mut next = r.scale_coeffs(divisor.lead());
            for (i, c) in divisor.coeffs.iter().enumerate() {
                next.coeffs[shift + i] = next.coeffs[shift + i].sub(&c.mul(&lead));
            }
            r = YPoly::new(next.coeffs);
            debug_assert!(r.degree().is_none_or(|d| d < rd));
        }
        r
    }

    /// Primitive gcd over F_q[x][y].
    pub fn gcd_primitive(a: &YPoly, b: &YPoly) -> YPoly {
        let mut a = a.primitive();
        let mut b = b.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Coefficients of the monic associate, as reduced rational functions.
    pub fn monic_ratfunc_coeffs(&self) -> Vec<RatFunc> {
        let lead = self.lead().clone();
        self.coeffs
            .iter()
            .map(|c| RatFunc::new(c.clone(), lead.clone()).expect("leading coefficient is nonzero"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    #[test]
    fn gcd_of_power_minpolys() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        // minpolys of x over K(x^2) and K(x^3): y^2 - x^2 and y^3 - x^3;
        // the gcd is y - x.
        let sq = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 1]));
        let cube = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 1]));
        let a = YPoly::minpoly_cleared(&sq);
        let b = YPoly::minpoly_cleared(&cube);
        let g = YPoly::gcd_primitive(&a, &b);
        assert_eq!(g.degree(), Some(1));
        let coeffs = g.monic_ratfunc_coeffs();
        assert_eq!(
            coeffs[0],
            RatFunc::from_poly(Poly::from_ints(&f5, &[0, -1]))
        );

        // gcd(y^2 - x^2, y^4 - x^4) = y^2 - x^2.
        let fourth = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 0, 1]));
        let c = YPoly::minpoly_cleared(&fourth);
        let g = YPoly::gcd_primitive(&a, &c);
        assert_eq!(g.degree(), Some(2));
    }

    #[test]
    fn derivative_detects_inseparability() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let cube = RatFunc::from_poly(Poly::from_ints(&f3, &[0, 0, 0, 1]));
        let p = YPoly::minpoly_cleared(&cube);
        assert!(p.derivative_y().is_zero());

        let plain = RatFunc::from_poly(Poly::from_ints(&f3, &[0, 1, 1]));
        assert!(!YPoly::minpoly_cleared(&plain).derivative_y().is_zero());
    }
}
