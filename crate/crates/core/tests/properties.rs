use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rdefect_core::algebra::{FieldSpec, Monomial, Poly};
use rdefect_core::invariants::{
    delta, delta_phi, edim, fiber_edim, linearized_map, mu, rd, square_rd, triangle_rd,
};
use rdefect_core::presentation::{quotient, DiagramShape, IdealPres, Orientation};
use rdefect_core::verify::{quotient_square, GenParams, Generator, Instance, Shape};

const F5: FieldSpec = FieldSpec::PrimeField(5);

fn generate(field: FieldSpec, seed: u64, shape: Shape) -> Instance {
    let params = GenParams { field, seed, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Generator::new(&params, &mut rng).instance(shape).unwrap()
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(F5), Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(2))]
}

fn poly(field: FieldSpec) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..6).prop_map(move |terms| {
        let mut p = Poly::zero(field, 2);
        for ((a, b), c) in terms {
            p.add_term(Monomial::new(vec![a, b]), &field.from_i64(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms((p, q, r) in field().prop_flat_map(|f| (poly(f), poly(f), poly(f)))) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn substitution_is_a_ring_map((p, q, s, t) in field().prop_flat_map(|f| (poly(f), poly(f), poly(f), poly(f)))) {
        let images = [s, t];
        let sub = |x: &Poly| x.substitute(&images, 2).unwrap();
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
    }

    #[test]
    fn rd_routes_and_delta_bounds(seed in any::<u64>(), f in field()) {
        let Instance::Map { map, ideal, .. } = generate(f, seed, Shape::Map) else { unreachable!() };
        let r = rd(&map).unwrap();
        let lin = linearized_map(&map).unwrap();
        prop_assert_eq!(lin.rank + lin.nullity, edim(map.source()));
        prop_assert_eq!(r + edim(map.target()), edim(map.source()) + fiber_edim(&map));
        let (d, dp) = (delta(&ideal), delta_phi(&map, &ideal).unwrap());
        prop_assert!(dp <= d && d - dp <= r);
    }

    #[test]
    fn delta_is_additive_in_towers(seed in any::<u64>()) {
        let Instance::RingWithIdeal { ideal, larger } = generate(F5, seed, Shape::RingWithIdeal) else { unreachable!() };
        let (quot, pi) = quotient(ideal.ring(), &ideal).unwrap();
        prop_assert_eq!(delta(&larger), delta(&ideal) + delta(&larger.over(quot).unwrap()));
        prop_assert_eq!(rd(&pi).unwrap(), delta(&ideal));
        prop_assert!(delta(&ideal) <= edim(ideal.ring()));
    }

    #[test]
    fn mu_of_maximal_ideal_is_edim(seed in any::<u64>(), f in field()) {
        let Instance::Ring { ring } = generate(f, seed, Shape::Ring) else { unreachable!() };
        let m = mu(&IdealPres::maximal(ring.clone()), 6).unwrap();
        prop_assert!(m.stable);
        prop_assert_eq!(m.value, edim(&ring));
    }

    #[test]
    fn squares_split_into_triangles(seed in any::<u64>()) {
        let Instance::ComposablePair { first, ideal, .. } = generate(F5, seed, Shape::ComposablePair) else { unreachable!() };
        let s = quotient_square(&first, &ideal).unwrap();
        let sq = s.as_square().unwrap();
        let upper = DiagramShape::triangle(sq.top.clone(), sq.right.clone(), Orientation::Clockwise).unwrap();
        let lower = DiagramShape::triangle(sq.left.clone(), sq.bottom.clone(), Orientation::Anticlockwise).unwrap();
        prop_assert_eq!(square_rd(&s).unwrap(), triangle_rd(&upper).unwrap() + triangle_rd(&lower).unwrap());
    }

    #[test]
    fn triangle_defect_is_bounded(seed in any::<u64>()) {
        let Instance::ComposablePair { first, second, .. } = generate(F5, seed, Shape::ComposablePair) else { unreachable!() };
        let t = DiagramShape::triangle(first.clone(), second.clone(), Orientation::Clockwise).unwrap();
        let v = triangle_rd(&t).unwrap();
        prop_assert!(v >= 0 && v <= rd(&second).unwrap() as i64);
        let opposite = DiagramShape::triangle(first, second, Orientation::Anticlockwise).unwrap();
        prop_assert_eq!(triangle_rd(&opposite).unwrap(), -v);
    }
}
