use modva::hopf::{Grade, HAlgebra, HElement, HGen, HMonomial};
use modva::lie::LieSpec;
use modva::series::{LaurentPoly, TruncSeries, Truncation};
use modva::vacuum::Carrier;
use modva::PrimeField;
use proptest::prelude::*;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

fn monomial(max: u32) -> impl Strategy<Value = HMonomial> {
    (0..=max, 0..=max, 0..=max).prop_map(|(d, h, e)| HMonomial::new(d, h, e))
}

fn element(f: &PrimeField, terms: Vec<(HMonomial, i64)>) -> HElement {
    let mut a = HElement::zero();
    for (m, c) in terms {
        a.add_term(m, f.elem(c));
    }
    a
}

fn series(f: &PrimeField, k: u32, coeffs: &[i64]) -> TruncSeries {
    let mut s = TruncSeries::zero(f, &["z", "w"], Truncation::total(2, k));
    let mut it = coeffs.iter();
    for i in 0..=k {
        for j in 0..=k - i {
            if let Some(&c) = it.next() {
                s.add_term(vec![i, j], f.elem(c));
            }
        }
    }
    s
}

proptest! {
    #[test]
    fn pascal_rule(p in prime(), m in -50i64..=50, k in 1u64..40) {
        let f = field(p);
        prop_assert_eq!(f.binom(m, k), f.binom(m - 1, k - 1) + f.binom(m - 1, k));
    }

    #[test]
    fn lucas_digit_product(p in prime(), m in 0i64..1_000_000, k in 0u64..1_000_000) {
        let f = field(p);
        let (mut a, mut b, mut want) = (m as u64, k, f.one());
        while a > 0 || b > 0 {
            want *= f.binom((a % p) as i64, b % p);
            a /= p;
            b /= p;
        }
        prop_assert_eq!(f.binom(m, k), want);
    }

    #[test]
    fn hasse_composition(p in prime(), exps in prop::collection::vec(-20i64..20, 1..5), a in 0u64..8, b in 0u64..8) {
        let f = field(p);
        let mut poly = LaurentPoly::zero();
        for (i, e) in exps.iter().enumerate() {
            poly.add_term(*e, f.elem(i as i64 + 1));
        }
        let lhs = poly.hasse(&f, b).hasse(&f, a);
        let rhs = poly.hasse(&f, a + b).scale(f.binom((a + b) as i64, a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_ring_axioms(
        p in prime(),
        k in 0u32..=6,
        x in prop::collection::vec(-9i64..9, 28),
        y in prop::collection::vec(-9i64..9, 28),
        z in prop::collection::vec(-9i64..9, 28),
    ) {
        let f = field(p);
        let (x, y, z) = (series(&f, k, &x), series(&f, k, &y), series(&f, k, &z));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&x.one_like()), x.clone());
        prop_assert!(x.sub(&x).is_zero());
        if !x.constant_term().is_zero() {
            prop_assert_eq!(x.mul(&x.inverse().unwrap()), x.one_like());
        }
    }

    #[test]
    fn product_is_graded_and_associative(
        p in prime(),
        x in monomial(3),
        y in monomial(3),
        z in monomial(3),
    ) {
        let f = field(p);
        let h = HAlgebra::new(&f);
        let (a, b, c) = (HElement::monomial(x, f.one()), HElement::monomial(y, f.one()), HElement::monomial(z, f.one()));
        let ab = h.mul(&a, &b);
        match ab.grade() {
            Grade::Degree(d) => prop_assert_eq!(d, x.degree() + y.degree()),
            Grade::Zero => {}
            Grade::Mixed => prop_assert!(false, "mixed product"),
        }
        prop_assert_eq!(h.mul(&ab, &c), h.mul(&a, &h.mul(&b, &c)));
        prop_assert_eq!(h.counit(&ab), h.counit(&a) * h.counit(&b));
    }

    #[test]
    fn antipode_reverses_products(
        p in prime(),
        xs in prop::collection::vec((monomial(2), -4i64..4), 1..3),
        ys in prop::collection::vec((monomial(2), -4i64..4), 1..3),
    ) {
        let f = field(p);
        let h = HAlgebra::new(&f);
        let (a, b) = (element(&f, xs), element(&f, ys));
        prop_assert_eq!(h.theta(&h.mul(&a, &b)), h.mul(&h.theta(&b), &h.theta(&a)));
        prop_assert_eq!(h.theta(&h.theta(&a)), a.clone());
        prop_assert_eq!(h.sigma(&h.mul(&a, &b)), h.mul(&h.sigma(&a), &h.sigma(&b)));
    }

    #[test]
    fn coproduct_is_multiplicative(p in prime(), x in monomial(2), y in monomial(2)) {
        let f = field(p);
        let h = HAlgebra::new(&f);
        let (a, b) = (HElement::monomial(x, f.one()), HElement::monomial(y, f.one()));
        prop_assert_eq!(h.coproduct(&h.mul(&a, &b)), h.tensor_mul(&h.coproduct(&a), &h.coproduct(&b)));
    }

    #[test]
    fn parse_round_trips(p in prime(), xs in prop::collection::vec((monomial(4), -6i64..6), 0..5)) {
        let f = field(p);
        let h = HAlgebra::new(&f);
        let a = element(&f, xs);
        prop_assert_eq!(h.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn generators_act_on_the_carrier_homogeneously(
        p in prime(),
        level in 0i64..13,
        n in 0u32..=4,
        pick in any::<prop::sample::Index>(),
        g in prop::sample::select(vec![HGen::D, HGen::H, HGen::E]),
        r in 0u32..=4,
    ) {
        let f = field(p);
        let c = Carrier::affine(LieSpec::sl2(&f), f.elem(level), 8);
        let w = c.basis_vector(n, pick.index(c.dim(n)));
        let image = c.act_gen(g, r, &w).unwrap();
        let shift = match g {
            HGen::D => r as i64,
            HGen::H => 0,
            HGen::E => -(r as i64),
        };
        let target = n as i64 + shift;
        if image.is_zero() {
            return Ok(());
        }
        prop_assert_eq!(image.homogeneous_degree(), Some(target as u32));
        if g == HGen::H {
            prop_assert_eq!(image, w.scale(f.binom(-2 * n as i64, r as u64)));
        }
    }
}
