use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cotruss::{builtin, check_axioms, Axiom, AxiomOptions};
use crate::exec::Exec;

fn space(name: &str, field: Field, n: usize) -> PointSpace {
    PointSpace::new(&builtin(name).unwrap(), TestAlgebra::new(field, n).unwrap()).unwrap()
}

fn f(p: u32) -> Field {
    Field::Prime(p)
}

#[test]
fn enumeration_counts() {
    for n in 0..3 {
        assert_eq!(space("trivial", f(3), n).enumerate().unwrap().len(), 1);
    }
    let ex2 = space("poly_theta", f(2), 1);
    let pts = ex2.enumerate().unwrap();
    assert_eq!(pts.len(), 4);
    let a = ex2.algebra();
    for p in &pts {
        assert!(p.image(0).is_zero() || p.image(0).is_one());
        assert!(p.image(1).is_zero() || *p.image(1) == a.generator(0));
    }
    let ex3 = space("laurent_theta", f(3), 0);
    let xs: Vec<String> = ex3.enumerate().unwrap().iter().map(|p| p.image(0).to_string()).collect();
    assert_eq!(xs, ["1", "2"]);
    assert_eq!(space("poly_theta", f(3), 2).enumerate().unwrap().len(), 81);
    for (name, p, n) in [("poly_theta", 3, 2), ("laurent_theta", 3, 1), ("laurent_theta", 5, 0), ("trivial", 2, 2)] {
        let s = space(name, f(p), n);
        assert_eq!(s.point_count(), Some(s.enumerate().unwrap().len() as u128));
    }
}

#[test]
fn rational_points_cannot_be_enumerated() {
    let s = space("poly_theta", Field::Rational, 1);
    assert_eq!(s.enumerate(), Err(Error::InfiniteBase));
    assert_eq!(s.point_count(), None);
}

#[test]
fn enumerated_points_carry_inverses() {
    let s = space("laurent_theta", f(3), 1);
    for p in s.enumerate().unwrap() {
        assert!((p.image(0) * p.image(2)).is_one());
        s.validate(&p).unwrap();
    }
}

#[test]
fn invalid_points_are_rejected() {
    let s = space("poly_theta", Field::Rational, 2);
    let a = s.algebra();
    assert!(matches!(s.point(vec![a.generator(0), a.zero()]), Err(Error::ParityViolation(_))));
    let l = space("laurent_theta", Field::Rational, 2);
    assert!(matches!(l.point(vec![a.zero(), a.zero()]), Err(Error::InvertibilityViolation(_))));
}

#[test]
fn sampling_is_deterministic_and_valid() {
    for name in ["trivial", "poly_theta", "laurent_theta"] {
        let s = space(name, Field::Rational, 2);
        let a = s.sample(&mut ChaCha8Rng::seed_from_u64(7));
        let b = s.sample(&mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        s.validate(&a).unwrap();
    }
}

/// Points `(x_i, θ_i)` of the polynomial example with generic-looking images.
fn ex2_points(s: &PointSpace) -> Vec<(GrassmannElement, GrassmannElement)> {
    let a = s.algebra();
    let q = |n| a.scalar(Scalar::from_int(a.field(), n));
    let (x1, x2) = (a.generator(0), a.generator(1));
    let x12 = &x1 * &x2;
    vec![
        (&q(2) + &x12, &x1 + &x2.scale(&Scalar::from_int(a.field(), 3))),
        (&q(-1) + &x12.scale(&Scalar::from_int(a.field(), 5)), x2.clone()),
        (q(4), &x1 - &x2),
    ]
}

#[test]
fn product_and_heap_match_the_displayed_formulas() {
    let s = space("poly_theta", Field::Rational, 2);
    let raw = ex2_points(&s);
    let pts: Vec<Point> = raw.iter().map(|(x, t)| s.point(vec![x.clone(), t.clone()]).unwrap()).collect();
    let [(x1, t1), (x2, t2), (x3, t3)] = [raw[0].clone(), raw[1].clone(), raw[2].clone()];
    let st = s.mul(&pts[0], &pts[1]);
    assert_eq!(*st.image(0), &(&x1 * &x2) + &(&t1 * &t2));
    assert_eq!(*st.image(1), &(&x1 * &t2) + &(&t1 * &x2));
    let h = s.heap(&pts[0], &pts[1], &pts[2]);
    assert_eq!(*h.image(0), &(&x1 - &x2) + &x3);
    assert_eq!(*h.image(1), &(&t1 - &t2) + &t3);
    let a = s.algebra();
    assert_eq!(s.unit().unwrap().images(), [a.one(), a.zero()]);
    assert_eq!(s.zero().unwrap().images(), [a.zero(), a.zero()]);
    let add = s.brace_add(&pts[1], &pts[2]).unwrap();
    assert_eq!(*add.image(0), &(&x2 - &a.one()) + &x3);
    assert_eq!(*add.image(1), &t2 + &t3);
    let neg = s.brace_neg(&pts[2]).unwrap();
    assert_eq!(*neg.image(0), &a.scalar(Scalar::from_int(a.field(), 2)) - &x3);
    assert_eq!(*neg.image(1), -&t3);
}

#[test]
fn laurent_brace_negative_is_the_group_inverse() {
    let s = space("laurent_theta", Field::Rational, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let p = s.sample(&mut rng);
        let neg = s.brace_neg(&p).unwrap();
        let (x, t) = (p.image(0), p.image(1));
        let xinv = x.inverse().unwrap();
        assert_eq!(*neg.image(0), xinv);
        assert_eq!(*neg.image(1), -&(&(&xinv * &xinv) * t));
        assert_eq!(s.mul(&neg, &p), *s.unit().unwrap());
        assert_eq!(s.mul(&p, &neg), *s.unit().unwrap());
        // The single-power form differs once the scalar part of x is not 1.
        let single = -&(&xinv * t);
        if !t.is_zero() && !x.scalar_part().is_one() {
            assert_ne!(*neg.image(1), single);
        }
    }
}

#[test]
fn exhaustive_truss_checks_pass_on_small_examples() {
    for (name, p, n) in [("poly_theta", 2, 1), ("laurent_theta", 3, 0), ("laurent_theta", 3, 1), ("trivial", 3, 1)] {
        let s = space(name, f(p), n);
        let r = check_truss(&s, Mode::Exhaustive { budget: DEFAULT_BUDGET }, Exec::default()).unwrap();
        assert!(r.passed(), "{name}: {r:#?}");
        let expected = match name {
            "poly_theta" => 12,
            "laurent_theta" => 11,
            _ => 8,
        };
        assert_eq!(r.identities.len(), expected, "{name}");
    }
}

#[test]
fn reductions_agree_with_brute_force() {
    let s = space("laurent_theta", f(3), 1);
    let full = check_truss(&s, Mode::Exhaustive { budget: u64::MAX }, Exec::default()).unwrap();
    assert!(full.identities.iter().all(|r| r.method == Method::Exhaustive));
    let reduced = check_truss(&s, Mode::Exhaustive { budget: 100_000 }, Exec::default()).unwrap();
    assert_eq!(reduced.get(Identity::Transposition).unwrap().method, Method::Reduced);
    assert!(full.passed() && reduced.passed());
}

#[test]
fn budget_is_enforced() {
    let s = space("poly_theta", f(3), 2);
    let err = check_truss(&s, Mode::Exhaustive { budget: 1000 }, Exec::default()).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { budget: 1000, .. }));
}

#[test]
fn sampled_mode_over_the_rationals() {
    let s = space("poly_theta", Field::Rational, 2);
    let r = check_truss(&s, Mode::Sampled { samples: 20, seed: 1 }, Exec::default()).unwrap();
    assert!(r.passed(), "{r:#?}");
    assert!(r.identities.iter().all(|i| i.method == Method::Sampled && i.tuples == 20));
}

#[test]
fn broken_coproduct_shows_up_as_a_distributivity_failure() {
    let p = builtin("poly_theta").unwrap();
    let opts = AxiomOptions::default();
    let mut seen = 0;
    for m in p.sign_mutations() {
        let axioms = check_axioms(&m.presentation, &opts);
        let con6 = axioms.get(Axiom::Con6).unwrap();
        if con6.passed {
            continue;
        }
        seen += 1;
        let s = PointSpace::new(&m.presentation, TestAlgebra::new(Field::Rational, 2).unwrap()).unwrap();
        let r = check_truss(&s, Mode::Sampled { samples: 50, seed: 11 }, Exec::default()).unwrap();
        let left = r.get(Identity::LeftDistributivity).unwrap();
        assert!(!left.passed && left.witness.as_ref().unwrap().len() == 4, "{:?} {}", m.map, m.symbol);
    }
    assert!(seen > 0);
}

#[test]
fn pushforward_along_the_identity_and_a_projection() {
    let s2 = space("poly_theta", f(3), 2);
    let s1 = space("poly_theta", f(3), 1);
    let (a2, a1) = (s2.algebra(), s1.algebra());
    let id = TestAlgebraHom::identity(a2);
    let proj = TestAlgebraHom::new(a2, a1, vec![a1.generator(0), a1.zero()]).unwrap();
    for p in s2.enumerate().unwrap() {
        assert_eq!(id.pushforward(&p), p);
        let q = proj.pushforward(&p);
        s1.validate(&q).unwrap();
        // ξ₂ ↦ 0 kills every ξ₂ term and keeps the ξ₁ coefficient.
        assert_eq!(q.image(1).coeff(1), p.image(1).coeff(1));
        assert_eq!(q.image(0).scalar_part(), p.image(0).scalar_part());
    }
    assert_eq!(proj.pushforward(s2.unit().unwrap()), *s1.unit().unwrap());
}

#[test]
fn test_algebra_homs_must_be_odd() {
    let (a2, a1) = (TestAlgebra::new(f(3), 2).unwrap(), TestAlgebra::new(f(3), 1).unwrap());
    assert!(matches!(TestAlgebraHom::new(a2, a1, vec![a1.one(), a1.zero()]), Err(Error::ParityViolation(_))));
    assert!(TestAlgebraHom::new(a2, a1, vec![a1.zero()]).is_err());
}

#[test]
fn naturality_for_random_homs() {
    let p = builtin("poly_theta").unwrap();
    let (a2, a1) = (TestAlgebra::new(f(3), 2).unwrap(), TestAlgebra::new(f(3), 1).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let homs: Vec<TestAlgebraHom> = (0..3).map(|_| TestAlgebraHom::random(a2, a1, &mut rng).unwrap()).collect();
    let r = check_naturality(&p, &homs, Exec::default()).unwrap();
    assert!(r.passed(), "{r:#?}");
    assert_eq!((r.source_points, r.target_points), (81, 9));
    assert_eq!(r.checks.len(), 6);
}

#[test]
fn reduced_operations_agree_with_projected_ones() {
    let p = builtin("poly_theta").unwrap();
    let a = TestAlgebra::new(f(3), 2).unwrap();
    let a0 = TestAlgebra::new(f(3), 0).unwrap();
    let full = PointSpace::new(&p, a).unwrap();
    let red = PointSpace::new(&p.reduce(), a0).unwrap();
    let kill = TestAlgebraHom::new(a, a0, vec![a0.zero(), a0.zero()]).unwrap();
    let drop_odd = |q: &Point| red.point(vec![kill.pushforward(q).image(0).clone()]).unwrap();
    let pts = full.enumerate().unwrap();
    for s in pts.iter().step_by(7) {
        for t in pts.iter().step_by(5) {
            assert_eq!(drop_odd(&full.mul(s, t)), red.mul(&drop_odd(s), &drop_odd(t)));
            let e = full.unit().unwrap();
            assert_eq!(drop_odd(&full.heap(s, e, t)), red.heap(&drop_odd(s), red.unit().unwrap(), &drop_odd(t)));
        }
    }
}

#[test]
fn rendering_is_a_record_of_generator_images() {
    let s = space("poly_theta", f(3), 2);
    let pts = s.enumerate().unwrap();
    let text = s.render(&pts[pts.len() - 1]);
    assert!(text.starts_with("{x: ") && text.contains(", theta: ") && text.ends_with('}'), "{text}");
}
