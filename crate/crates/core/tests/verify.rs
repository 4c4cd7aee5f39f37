use rdefect_core::algebra::{FieldSpec, Poly};
use rdefect_core::presentation::{IdealPres, LocalMapPres, LocalRingPres, Ring};
use rdefect_core::verify::{
    campaign, check_statement, run_trial, trial_instance, GenParams, Generator, Instance,
    Outcome, Shape, SkipReason, StatementId,
};
use rdefect_core::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn regular(vars: &[&str]) -> Ring {
    LocalRingPres::regular(Q, vars, 6).unwrap().into_ring()
}

fn ideal(ring: &Ring, gens: Vec<Poly>) -> IdealPres {
    IdealPres::new(ring.clone(), gens).unwrap()
}

/// `t -> y^2` with `I = (t)`, `J = (y^2)`, `I' = (t^2)`, `J' = (y^4)`.
fn square_map_instance() -> Instance {
    let a = regular(&["t"]);
    let b = regular(&["y"]);
    let (t, y) = (a.var(0), b.var(0));
    let map = LocalMapPres::new(a.clone(), b.clone(), vec![y.pow(2)], 6).unwrap();
    Instance::Map {
        map,
        ideal: ideal(&a, vec![t.clone()]),
        target_ideal: ideal(&b, vec![y.pow(2)]),
        small_ideal: ideal(&a, vec![t.pow(2)]),
        small_target_ideal: ideal(&b, vec![y.pow(4)]),
    }
}

#[test]
fn lem1_on_square_map_passes() {
    let out = check_statement(StatementId::Lem_br_lem1, &square_map_instance(), 0).unwrap();
    assert_eq!(out, Outcome::Pass { vacuous: false });
}

#[test]
fn every_map_statement_passes_on_square_map() {
    let inst = square_map_instance();
    for &id in StatementId::ALL.iter().filter(|id| id.shape() == Shape::Map) {
        let out = check_statement(id, &inst, 7).unwrap();
        assert!(matches!(out, Outcome::Pass { .. }), "{id}: {out:?}");
    }
}

#[test]
fn quotient_by_m2_passes_cor2() {
    let a = regular(&["x", "y"]);
    let m2 = IdealPres::maximal_power(a.clone(), 2);
    let inst = Instance::RingWithIdeal { ideal: m2, larger: IdealPres::maximal(a) };
    let out = check_statement(StatementId::Cor_br_cor2, &inst, 0).unwrap();
    assert_eq!(out, Outcome::Pass { vacuous: false });
}

#[test]
fn undecidable_dimension_blocks_bwr_thm1() {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let (x, y, z) = (Poly::var(Q, 3, 0), Poly::var(Q, 3, 1), Poly::var(Q, 3, 2));
    let r1 = &(&x.pow(3) + &y.pow(3)) + &(&(&x * &y) * &z);
    let r2 = &(&(&x * &x) * &y) + &z.pow(3);
    let a = LocalRingPres::new(Q, vars, vec![r1, r2], 6).unwrap().into_ring();
    let map = LocalMapPres::identity(a);
    let out = check_statement(StatementId::Thm_bwr_thm1, &Instance::FlatFamily { map }, 0).unwrap();
    assert_eq!(out, Outcome::Skipped { reason: SkipReason::UnknownBlocked });
}

#[test]
fn wrong_shape_is_an_error() {
    let a = regular(&["x"]);
    let err = check_statement(StatementId::Thm_rs_thm1, &Instance::Ring { ring: a }, 0).unwrap_err();
    assert!(matches!(err, Error::ShapeMismatch { .. }));
}

#[test]
fn generated_instances_have_requested_shape() {
    let params = GenParams { seed: 1, ..Default::default() };
    let shapes = [
        Shape::Ring,
        Shape::RingWithIdeal,
        Shape::Map,
        Shape::ComposablePair,
        Shape::QuotientSquare,
        Shape::FlatFamily,
        Shape::SurjectionTriangle,
    ];
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Generator::new(&params, &mut rng);
        for &shape in &shapes {
            let inst = g.instance(shape).unwrap();
            assert_eq!(inst.shape(), shape);
            if let Instance::Ring { ring } = &inst {
                assert!(ring.nvars() <= params.max_vars);
            }
        }
    }
}

#[test]
fn single_trial_of_edim_formula() {
    let params = GenParams { seed: 3, ..Default::default() };
    let r = campaign(&params, 1, &[StatementId::Prop_br_lem2]);
    assert_eq!(r.total, 1);
    assert_eq!(r.failed, 0);
}

#[test]
fn campaigns_are_deterministic() {
    let params = GenParams { seed: 42, ..Default::default() };
    let ids = [StatementId::Thm_rs_thm1, StatementId::Cor_rs_cor11, StatementId::Lem_br_lem4];
    let a = campaign(&params, 20, &ids).to_json();
    let b = campaign(&params, 20, &ids).to_json();
    assert_eq!(a, b);
    let v = run_trial(&params, StatementId::Lem_br_lem4, 5).unwrap();
    assert_eq!(v.digest, run_trial(&params, StatementId::Lem_br_lem4, 5).unwrap().digest);
    let (inst, _) = trial_instance(&params, StatementId::Lem_br_lem4, 5).unwrap();
    assert_eq!(inst.shape(), Shape::Map);
}

#[test]
fn hundred_trials_have_no_failures() {
    let params = GenParams { seed: 42, ..Default::default() };
    let r = campaign(&params, 100, StatementId::ALL);
    assert_eq!(r.failed, 0, "{:#?}", r.failures);
    assert!(r.generation_errors.is_empty(), "{:?}", r.generation_errors);
}

#[test]
fn rationals_campaign_has_no_failures() {
    let params = GenParams { field: Q, seed: 7, ..Default::default() };
    let r = campaign(&params, 30, StatementId::ALL);
    assert_eq!(r.failed, 0, "{:#?}", r.failures);
}
