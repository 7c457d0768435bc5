//! The Galois correspondence between subgroups of Γ and intermediate
//! fields of K ⊂ K(x): fixing groups G(f), fixed fields Fix(H) computed
//! through elementary symmetric functions, normality of K(f) ⊂ K(x), the
//! subgroup-to-component map, and Lüroth generators of compositum fields
//! K(f, g) via bivariate gcds.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::moebius::{
    self, ensure_unit_enumerable, enumerate_gamma, gamma_order, GammaKind, Subgroup,
};
use crate::par::{self, ExecMode};
use crate::ratfunc::{Poly, RatFunc};
use crate::ypoly::YPoly;

/// Past this unit-group size, phi_map skips the (purely confirmatory)
/// division check against the degree-(q^3-q) full invariant.
const FULL_INVARIANT_CHECK_BOUND: u64 = 130;

/// A Lüroth generator of Fix(H) together with its provenance: the group it
/// fixes and the index of the elementary symmetric function that produced
/// it.
#[derive(Clone, Debug)]
pub struct FixedFieldGenerator {
    pub generator: RatFunc,
    pub group: Subgroup,
    /// 1-based index k of the first nonconstant elementary symmetric
    /// function e_k of the group elements.
    pub witness: usize,
}

/// G(f) = {u in Γ : f ∘ u = f}, found by scanning all q^3 - q units.
pub fn fixing_group(f: &RatFunc) -> Result<Subgroup> {
    fixing_group_with(f, ExecMode::default())
}

pub(crate) fn fixing_group_with(f: &RatFunc, mode: ExecMode) -> Result<Subgroup> {
    assert!(!f.is_constant(), "fixing group of a constant");
    let ctx = f.ctx();
    ensure_unit_enumerable(ctx)?;
    let gamma = enumerate_gamma(ctx, GammaKind::Full);
    let members = par::slice_filter_map(gamma.elements(), mode, |u| {
        (f.compose(&u.to_ratfunc()) == *f).then(|| u.clone())
    });
    let group = Subgroup::new_unchecked(ctx, members);
    // Lagrange against the degree: |G(f)| divides deg f.
    assert_eq!(
        f.degree() % group.order(),
        0,
        "fixing group order must divide the degree"
    );
    Ok(group)
}

/// Generator of Fix(H) for a finite subgroup H: the first nonconstant
/// elementary symmetric function e_k of the member functions. Its degree
/// equals |H|.
pub fn fixed_field(h: &Subgroup) -> FixedFieldGenerator {
    let ctx = h.ctx();
    let m = h.order();
    // Build N(T) = prod_i (uD_i T - uN_i) as a T-polynomial with
    // coefficients in F_q[x]; then e_k = (-1)^k N_{m-k} / N_m.
    let mut coeffs: Vec<Poly> = vec![Poly::one(ctx)];
    for u in h.elements() {
        let r = u.to_ratfunc();
        let (un, ud) = (r.num().clone(), r.den().clone());
        let mut next = vec![Poly::zero(ctx); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = next[j + 1].add(&c.mul(&ud));
            next[j] = next[j].sub(&c.mul(&un));
        }
        coeffs = next;
    }
    let lead = coeffs[m].clone();
    for k in 1..=m {
        let mut num = coeffs[m - k].clone();
        if k % 2 == 1 {
            num = num.neg();
        }
        let e_k = RatFunc::new(num, lead.clone()).expect("product of unit denominators is nonzero");
        if !e_k.is_constant() {
            assert_eq!(e_k.degree(), m, "a fixed-field generator has degree |H|");
            return FixedFieldGenerator {
                generator: e_k,
                group: h.clone(),
                witness: k,
            };
        }
    }
    unreachable!("a finite subgroup always has a nonconstant symmetric function")
}

/// f' = fixed_field(fixing_group(f)): the generator of Fix(G(f)).
///
/// f' is verified to be a right component of f; for small unit groups it
/// is also verified to be a right component of the full invariant
/// (the degree q^3-q generator of Fix(Γ)).
pub fn phi_map(f: &RatFunc) -> Result<RatFunc> {
    let group = fixing_group(f)?;
    let generator = fixed_field(&group).generator;
    assert!(
        f.left_divide(&generator).is_some(),
        "Fix(G(f)) generator must be a right component of f"
    );
    let ctx = f.ctx();
    if gamma_order(ctx.q()) <= FULL_INVARIANT_CHECK_BOUND {
        let full = crate::constructions::full_invariant(ctx);
        assert!(
            full.left_divide(&generator).is_some(),
            "Fix(G(f)) generator must be a right component of the full invariant"
        );
    }
    Ok(generator)
}

/// Whether K(f) ⊂ K(x) is a normal extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    NotNormal,
    /// The minimal polynomial of x over K(f) is inseparable; only one
    /// direction of the normality criterion is available there, so no
    /// verdict is given.
    InseparableUnsupported,
}

/// Tests separability of the minimal polynomial f_N(y) - f f_D(y) of x
/// over K(f) by the y-derivative gcd; when separable, the extension is
/// normal exactly when |G(f)| = deg f.
pub fn is_normal_extension(f: &RatFunc) -> Result<Normality> {
    assert!(!f.is_constant(), "normality of a constant extension");
    let minpoly = YPoly::minpoly_cleared(f);
    let dy = minpoly.derivative_y();
    let separable = if dy.is_zero() {
        false
    } else {
        YPoly::gcd_primitive(&minpoly, &dy).degree() == Some(0)
    };
    if !separable {
        return Ok(Normality::InseparableUnsupported);
    }
    let group = fixing_group(f)?;
    Ok(if group.order() == f.degree() {
        Normality::Normal
    } else {
        Normality::NotNormal
    })
}

/// The right component of fixed_field(H) attached to a subgroup of H:
/// larger subgroups map to smaller fields, and the generator of the
/// smaller field is left-divisible by it.
pub fn component_for_subgroup(h: &Subgroup, hsub: &Subgroup) -> Result<RatFunc> {
    if !hsub.is_subgroup_of(h) {
        return Err(Error::NotASubgroup);
    }
    let component = fixed_field(hsub).generator;
    let parent = fixed_field(h).generator;
    assert!(
        parent.left_divide(&component).is_some(),
        "subgroup generator must divide the parent fixed-field generator"
    );
    Ok(component)
}

/// A Lüroth generator of the compositum K(f, g): the first nonconstant
/// coefficient of the monic gcd of the two minimal polynomials of x, in
/// K(x)[y], canonicalized to its least unit-orbit representative. Its
/// degree is [K(x) : K(f, g)].
pub fn joint_generator(f: &RatFunc, g: &RatFunc) -> Result<RatFunc> {
    assert!(
        !f.is_constant() && !g.is_constant(),
        "joint generator of a constant"
    );
    let a = YPoly::minpoly_cleared(f);
    let b = YPoly::minpoly_cleared(g);
    let gcd = YPoly::gcd_primitive(&a, &b);
    for coeff in gcd.monic_ratfunc_coeffs() {
        if !coeff.is_constant() {
            return moebius::unit_orbit_min(&coeff);
        }
    }
    unreachable!("K(f, g) strictly contains K, so some gcd coefficient is nonconstant")
}

/// Two nonconstant functions generate the same intermediate field exactly
/// when their degrees agree and each left-divides the other. Generators are
/// unique only up to left-composition with units, so field equality is
/// always decided this way rather than by comparing them directly.
pub fn same_field(f: &RatFunc, g: &RatFunc) -> bool {
    f.degree() == g.degree() && f.left_divide(g).is_some() && g.left_divide(f).is_some()
}

/// x^q - x as a rational function: the additive polynomial whose fixing
/// group is exactly the translation group H_0.
pub fn additive_poly(ctx: &FieldCtx) -> RatFunc {
    let q = ctx.q() as usize;
    let mut coeffs = vec![ctx.zero(); q + 1];
    coeffs[1] = ctx.neg(ctx.one());
    coeffs[q] = ctx.one();
    RatFunc::from_poly(Poly::new(ctx.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::Moebius;
    use crate::ratfunc::random_ratfunc;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn f(p: u64, m: usize) -> FieldCtx {
        FieldCtx::new(p, m).unwrap()
    }

    #[test]
    fn fixing_group_of_additive_poly_is_translations() {
        for (p, m) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1)] {
            let ctx = f(p, m);
            let g = fixing_group(&additive_poly(&ctx)).unwrap();
            let h0 = enumerate_gamma(&ctx, GammaKind::Translations);
            assert_eq!(g.elements(), h0.elements());
        }
    }

    #[test]
    fn fixing_group_examples() {
        // x^2 (x-1)^2 over F_3 is fixed exactly by {x, 1-x}.
        let f3 = f(3, 1);
        let sq = Poly::from_ints(&f3, &[0, 0, 1]);
        let shifted = Poly::from_ints(&f3, &[-1, 1]).pow(2);
        let func = RatFunc::from_poly(sq.mul(&shifted));
        let g = fixing_group(&func).unwrap();
        assert_eq!(g.order(), 2);
        let one_minus_x =
            Moebius::new(&f3, f3.from_int(-1), f3.one(), f3.zero(), f3.one()).unwrap();
        assert!(g.contains(&one_minus_x));
        assert!(1 < g.order() && g.order() < func.degree());

        // x^3 over F_5 has a trivial fixing group.
        let f5 = f(5, 1);
        let cube = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 1]));
        assert_eq!(fixing_group(&cube).unwrap().order(), 1);
    }

    #[test]
    fn fixing_group_on_squared_translate_over_f2() {
        // Over F_2 the order-2 witness function degenerates to a square,
        // (x^2+x)^2, but its fixing group is still {x, x+1}.
        let f2 = f(2, 1);
        let func = RatFunc::from_poly(Poly::from_ints(&f2, &[0, 1, 1]).pow(2));
        let g = fixing_group(&func).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.contains(&Moebius::translation(&f2, f2.one())));
    }

    #[test]
    fn fixed_field_examples() {
        // Γ_0(F_2) = {x, x+1} has fixed field generated by x^2+x.
        let f2 = f(2, 1);
        let gamma0 = enumerate_gamma(&f2, GammaKind::Affine);
        let gen = fixed_field(&gamma0);
        assert_eq!(
            gen.generator,
            RatFunc::from_poly(Poly::from_ints(&f2, &[0, 1, 1]))
        );
        assert_eq!(gen.witness, 2);

        // {x, 1/x} over F_3: e_1 = x + 1/x = (x^2+1)/x.
        let f3 = f(3, 1);
        let h = Subgroup::from_elements(&f3, vec![Moebius::identity(&f3), Moebius::inversion(&f3)])
            .unwrap();
        let gen = fixed_field(&h);
        assert_eq!(
            gen.generator,
            RatFunc::new(Poly::from_ints(&f3, &[1, 0, 1]), Poly::x(&f3)).unwrap()
        );
        assert_eq!(gen.witness, 1);

        // The whole of Γ(F_2) yields a degree-6 generator equal to the
        // full invariant up to a unit.
        let gamma = enumerate_gamma(&f2, GammaKind::Full);
        let gen = fixed_field(&gamma);
        assert_eq!(gen.generator.degree(), 6);
        let full = crate::constructions::full_invariant(&f2);
        assert!(same_field(&gen.generator, &full));
    }

    #[test]
    fn fixed_field_degree_matches_group_order_for_all_subgroups() {
        for (p, m) in [(2u64, 1usize), (3, 1)] {
            let ctx = f(p, m);
            let gamma = enumerate_gamma(&ctx, GammaKind::Full);
            let lattice = crate::moebius::enumerate_subgroups(&gamma, &Default::default()).unwrap();
            for node in lattice.nodes() {
                let gen = fixed_field(node);
                assert_eq!(gen.generator.degree(), node.order());
                for u in node.elements() {
                    if gen.generator.is_constant() {
                        panic!("generator cannot be constant");
                    }
                    assert_eq!(gen.generator.compose(&u.to_ratfunc()), gen.generator);
                }
            }
        }
    }

    #[test]
    fn gamma_fixed_field_is_nonconstant_for_finite_fields() {
        for (p, m) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let ctx = f(p, m);
            let gamma = enumerate_gamma(&ctx, GammaKind::Full);
            let gen = fixed_field(&gamma);
            assert!(!gen.generator.is_constant());
            assert_eq!(gen.generator.degree() as u64, gamma_order(ctx.q()));
        }
    }

    #[test]
    fn phi_map_examples() {
        // x^2 (x-1)^2 over F_3 maps to the degree-2 field of x^2 - x.
        let f3 = f(3, 1);
        let func = RatFunc::from_poly(
            Poly::from_ints(&f3, &[0, 0, 1]).mul(&Poly::from_ints(&f3, &[-1, 1]).pow(2)),
        );
        let image = phi_map(&func).unwrap();
        assert_eq!(image.degree(), 2);
        assert!(same_field(
            &image,
            &RatFunc::from_poly(Poly::from_ints(&f3, &[0, -1, 1]))
        ));
        assert!(func.left_divide(&image).is_some());

        // x^q - x maps to itself up to a unit.
        let add = additive_poly(&f3);
        let image = phi_map(&add).unwrap();
        assert!(same_field(&image, &add));

        // Trivial fixing group maps to a unit (the whole field K(x)).
        let f5 = f(5, 1);
        let cube = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 1]));
        let image = phi_map(&cube).unwrap();
        assert!(image.is_unit());
        assert!(same_field(&image, &RatFunc::x(&f5)));
    }

    #[test]
    fn normality_examples() {
        let f3 = f(3, 1);
        assert_eq!(
            is_normal_extension(&additive_poly(&f3)).unwrap(),
            Normality::Normal
        );

        let func = RatFunc::from_poly(
            Poly::from_ints(&f3, &[0, 0, 1]).mul(&Poly::from_ints(&f3, &[-1, 1]).pow(2)),
        );
        assert_eq!(is_normal_extension(&func).unwrap(), Normality::NotNormal);

        // x^p over F_p is inseparable.
        let cube = RatFunc::from_poly(Poly::from_ints(&f3, &[0, 0, 0, 1]));
        assert_eq!(
            is_normal_extension(&cube).unwrap(),
            Normality::InseparableUnsupported
        );
    }

    #[test]
    fn component_for_subgroup_examples() {
        let f4 = f(2, 2);
        let gamma0 = enumerate_gamma(&f4, GammaKind::Affine);
        let c2 = Subgroup::from_elements(
            &f4,
            vec![Moebius::identity(&f4), Moebius::translation(&f4, f4.one())],
        )
        .unwrap();
        let comp = component_for_subgroup(&gamma0, &c2).unwrap();
        assert_eq!(comp, RatFunc::from_poly(Poly::from_ints(&f4, &[0, 1, 1])));
        // and it divides the affine invariant (x^q-x)^(q-1)
        let pq = RatFunc::from_poly(crate::constructions::affine_invariant(&f4));
        assert!(pq.left_divide(&comp).is_some());

        // The trivial subgroup gives x.
        let trivial = Subgroup::from_elements(&f4, vec![Moebius::identity(&f4)]).unwrap();
        assert_eq!(
            component_for_subgroup(&gamma0, &trivial).unwrap(),
            RatFunc::x(&f4)
        );

        // The whole group gives its own generator.
        let full_gen = component_for_subgroup(&gamma0, &gamma0).unwrap();
        assert_eq!(full_gen, fixed_field(&gamma0).generator);

        // Not-a-subgroup errors (the containment is the wrong way around).
        assert_eq!(
            component_for_subgroup(&c2, &gamma0).unwrap_err(),
            Error::NotASubgroup
        );
    }

    #[test]
    fn joint_generator_examples() {
        let f5 = f(5, 1);
        let sq = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 1]));
        let cube = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 1]));
        // K(x^2, x^3) = K(x).
        assert_eq!(joint_generator(&sq, &cube).unwrap(), RatFunc::x(&f5));

        // K(x^2, x^4) = K(x^2).
        let fourth = RatFunc::from_poly(Poly::from_ints(&f5, &[0, 0, 0, 0, 1]));
        let j = joint_generator(&sq, &fourth).unwrap();
        assert_eq!(j.degree(), 2);
        assert!(same_field(&j, &sq));
    }

    #[test]
    fn joint_generator_with_full_invariant_matches_phi() {
        let f3 = f(3, 1);
        let func = RatFunc::from_poly(
            Poly::from_ints(&f3, &[0, 0, 1]).mul(&Poly::from_ints(&f3, &[-1, 1]).pow(2)),
        );
        let fq = crate::constructions::full_invariant(&f3);
        let joint = joint_generator(&func, &fq).unwrap();
        let phi = phi_map(&func).unwrap();
        assert_eq!(joint.degree(), fixing_group(&func).unwrap().order());
        assert!(same_field(&joint, &phi));
    }

    #[test]
    fn fixing_group_is_unit_invariant() {
        let mut rng = StdRng::seed_from_u64(5);
        for (p, m) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let ctx = f(p, m);
            let units = enumerate_gamma(&ctx, GammaKind::Full);
            for _ in 0..6 {
                let func = random_ratfunc(&ctx, &mut rng, 3);
                let g = fixing_group(&func).unwrap();
                assert_eq!(func.degree() % g.order(), 0);
                for u in units.elements().iter().take(6) {
                    // left composition leaves G(f) unchanged
                    let left = u.apply_left(&func);
                    if !left.is_constant() {
                        assert_eq!(fixing_group(&left).unwrap().elements(), g.elements());
                    }
                    // right composition conjugates it
                    let right = func.compose(&u.to_ratfunc());
                    assert_eq!(
                        fixing_group(&right).unwrap().elements(),
                        g.conjugate(u).elements()
                    );
                }
            }
        }
    }
}
