use evobench::problems::{
    batched_evaluate, build_suite, composition_weights, determinant, make_instance, orthogonality_error, registry,
    FunctionSpec, ProblemInstance, SuiteConfig,
};
use evobench::rng::{RandomSource, RngStream};
use proptest::prelude::*;

fn random_points(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = RngStream::new(seed, 11);
    (0..n)
        .map(|_| (0..dim).map(|_| rng.uniform_in(-100.0, 100.0)).collect())
        .collect()
}

fn max_rel_dev<T: Into<f64> + Copy>(a: &[T], b: &[T]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let (x, y): (f64, f64) = (x.into(), y.into());
            (x - y).abs() / x.abs().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

#[test]
fn batched_matches_scalar_for_every_problem_and_dim() {
    for dim in [10, 100, 1000] {
        let n = if dim == 1000 { 20 } else { 70 };
        let xs = random_points(n, dim, dim as u64);
        let xs32: Vec<Vec<f32>> = xs.iter().map(|x| x.iter().map(|&v| v as f32).collect()).collect();
        for e in registry() {
            let p64 = make_instance::<f64>(e.id, dim, 1, 5).unwrap();
            let scalar: Vec<f64> = xs.iter().map(|x| p64.evaluate(x).unwrap()).collect();
            let batched = batched_evaluate(&p64, &xs).unwrap();
            assert!(max_rel_dev(&scalar, &batched) <= 1e-12, "{} d{dim}", e.name);

            let p32 = p64.cast::<f32>();
            let scalar: Vec<f32> = xs32.iter().map(|x| p32.evaluate(x).unwrap()).collect();
            let batched = batched_evaluate(&p32, &xs32).unwrap();
            assert!(max_rel_dev(&scalar, &batched) <= 1e-6, "{} d{dim} f32", e.name);
        }
    }
}

#[test]
fn three_sphere_points() {
    let p = evobench::problems::make_custom_instance::<f64>(evobench::problems::BaseKind::Sphere, 1, 10, 1, 0).unwrap();
    let xs = random_points(3, 10, 1);
    let out = batched_evaluate(&p, &xs).unwrap();
    assert_eq!(out.len(), 3);
    for (x, v) in xs.iter().zip(out) {
        assert_eq!(p.evaluate(x).unwrap(), v);
    }
}

#[test]
fn every_problem_is_bounded_below_by_its_bias() {
    for e in registry() {
        let p = make_instance::<f64>(e.id, 10, 1, 99).unwrap();
        let fstar = p.optimum_value();
        let at_shift = p.evaluate(&p.shift).unwrap();
        if matches!(p.spec, FunctionSpec::Base(_)) {
            assert_eq!(at_shift, fstar, "{}", e.name);
        }
        for x in random_points(10_000, 10, e.id as u64) {
            assert!(p.evaluate(&x).unwrap() >= fstar, "{}", e.name);
        }
    }
}

#[test]
fn generated_rotations_are_orthogonal_with_unit_determinant() {
    for dim in [2, 10, 30, 50] {
        for e in registry() {
            let p: ProblemInstance<f64> = make_instance(e.id, dim, 3, 1).unwrap();
            let m = p.rotation.rows().unwrap();
            assert!(orthogonality_error(m, dim) < 1e-10);
            assert!((determinant(m, dim).abs() - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn shifts_stay_in_the_inner_box() {
    let suite = build_suite::<f64>(&SuiteConfig::new("cec", (1..=12).collect(), 30).instance_count(4)).unwrap();
    for p in suite.iter() {
        assert!(p.shift.iter().all(|&o| (-80.0..=80.0).contains(&o)));
    }
}

proptest! {
    #[test]
    fn composition_weights_are_normalized(d2 in prop::collection::vec(0.0f64..1e7, 1..6), dim in 1usize..100) {
        let sigmas: Vec<f64> = (1..=d2.len()).map(|k| 10.0 * k as f64).collect();
        let mut w = vec![0.0; d2.len()];
        composition_weights(&d2, sigmas.into_iter(), dim, &mut w);
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(w.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn evaluation_is_pure(id in 1u32..=12, seed in any::<u64>()) {
        let p = make_instance::<f64>(id, 10, 1, 3).unwrap();
        let x = &random_points(1, 10, seed)[0];
        prop_assert_eq!(p.evaluate(x).unwrap(), p.evaluate(x).unwrap());
    }
}
