//! The default problem registry.

use crate::error::{Error, Result};
use crate::problems::functions::BaseKind;
use crate::problems::instance::{ProblemInstance, Template, DEFAULT_LB, DEFAULT_UB};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemClass {
    Unimodal,
    Multimodal,
    Hybrid,
    Composition,
}

impl ProblemClass {
    pub fn name(self) -> &'static str {
        match self {
            ProblemClass::Unimodal => "unimodal",
            ProblemClass::Multimodal => "multimodal",
            ProblemClass::Hybrid => "hybrid",
            ProblemClass::Composition => "composition",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemEntry {
    pub id: u32,
    pub name: &'static str,
    pub class: ProblemClass,
    pub template: Template,
}

impl ProblemEntry {
    pub fn bounds(&self) -> (f64, f64) {
        (DEFAULT_LB, DEFAULT_UB)
    }
}

pub const PROBLEM_COUNT: u32 = 12;

/// All registered problems in id order.
pub fn registry() -> Vec<ProblemEntry> {
    use BaseKind::*;
    use ProblemClass::*;
    let base = |id, name, class, kind| ProblemEntry {
        id,
        name,
        class,
        template: Template::Base(kind),
    };
    vec![
        base(1, "bent_cigar", Unimodal, BentCigar),
        base(2, "elliptic", Unimodal, Elliptic),
        base(3, "rosenbrock", Multimodal, Rosenbrock),
        base(4, "rastrigin", Multimodal, Rastrigin),
        base(5, "ackley", Multimodal, Ackley),
        base(6, "griewank", Multimodal, Griewank),
        base(7, "schwefel_12", Multimodal, Schwefel12),
        base(8, "expanded_schaffer_f6", Multimodal, ExpandedSchafferF6),
        ProblemEntry {
            id: 9,
            name: "hybrid_1",
            class: Hybrid,
            template: Template::Hybrid {
                proportions: vec![0.3, 0.3, 0.4],
                kinds: vec![Rosenbrock, Rastrigin, Elliptic],
            },
        },
        ProblemEntry {
            id: 10,
            name: "hybrid_2",
            class: Hybrid,
            template: Template::Hybrid {
                proportions: vec![0.2, 0.2, 0.3, 0.3],
                kinds: vec![BentCigar, Griewank, Ackley, ExpandedSchafferF6],
            },
        },
        ProblemEntry {
            id: 11,
            name: "composition_1",
            class: Composition,
            template: Template::Composition(vec![
                (Rastrigin, 10.0, 1.0, 0.0),
                (Griewank, 20.0, 1.0, 100.0),
                (Schwefel12, 30.0, 1.0, 200.0),
            ]),
        },
        ProblemEntry {
            id: 12,
            name: "composition_2",
            class: Composition,
            template: Template::Composition(vec![
                (Ackley, 10.0, 1.0, 0.0),
                (ExpandedSchafferF6, 20.0, 1.0, 100.0),
                (Rosenbrock, 30.0, 1.0, 200.0),
                (Sphere, 40.0, 1.0, 300.0),
            ]),
        },
    ]
}

pub fn lookup(problem_id: u32) -> Result<ProblemEntry> {
    registry()
        .into_iter()
        .find(|e| e.id == problem_id)
        .ok_or_else(|| Error::config("problems", format!("unknown problem id {problem_id}")))
}

/// Seeded instance of a registered problem.
pub fn make_instance<T: Scalar>(problem_id: u32, dim: usize, instance_id: u32, master_seed: u64) -> Result<ProblemInstance<T>> {
    let entry = lookup(problem_id)?;
    ProblemInstance::generate(entry.name, &entry.template, problem_id, instance_id, dim, master_seed)
}

/// Seeded shifted/rotated instance of any base kind, outside the registry.
/// `problem_id` only keys the random stream and the bias.
pub fn make_custom_instance<T: Scalar>(
    kind: BaseKind,
    problem_id: u32,
    dim: usize,
    instance_id: u32,
    master_seed: u64,
) -> Result<ProblemInstance<T>> {
    ProblemInstance::generate(kind.name(), &Template::Base(kind), problem_id, instance_id, dim, master_seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::rotation::orthogonality_error;
    use crate::rng::{RandomSource, RngStream};

    #[test]
    fn twelve_entries_in_order() {
        let r = registry();
        assert_eq!(r.len(), PROBLEM_COUNT as usize);
        assert!(r.iter().enumerate().all(|(i, e)| e.id == i as u32 + 1));
        assert_eq!(r.iter().filter(|e| e.class == ProblemClass::Hybrid).count(), 2);
        assert_eq!(r.iter().filter(|e| e.class == ProblemClass::Composition).count(), 2);
    }

    #[test]
    fn unknown_id_is_config_error() {
        assert!(make_instance::<f64>(13, 10, 1, 0).unwrap_err().is_config());
        assert!(make_instance::<f64>(0, 10, 1, 0).unwrap_err().is_config());
    }

    #[test]
    fn every_problem_hits_its_bias_at_the_shift_and_is_bounded_below() {
        let mut rng = RngStream::new(5, 5);
        for e in registry() {
            let p = make_instance::<f64>(e.id, 10, 1, 42).unwrap();
            let fstar = p.optimum_value();
            assert_eq!(fstar, 100.0 * e.id as f64);
            let at_shift = p.evaluate(&p.shift.clone()).unwrap();
            assert!((at_shift - fstar).abs() <= 1e-9 * fstar, "{} {at_shift}", e.name);
            for _ in 0..2000 {
                let x: Vec<f64> = (0..10).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
                assert!(p.evaluate(&x).unwrap() >= fstar, "{}", e.name);
            }
        }
    }

    #[test]
    fn instances_differ_everywhere() {
        for pair in 0..100u32 {
            let id = pair % PROBLEM_COUNT + 1;
            let a = make_instance::<f64>(id, 10, 2 * pair + 1, 7).unwrap();
            let b = make_instance::<f64>(id, 10, 2 * pair + 2, 7).unwrap();
            assert!(a.shift.iter().zip(&b.shift).all(|(x, y)| x != y));
        }
    }

    #[test]
    fn generated_rotations_are_orthogonal() {
        for e in registry() {
            let p = make_instance::<f64>(e.id, 30, 1, 1).unwrap();
            assert!(orthogonality_error(p.rotation.rows().unwrap(), 30) < 1e-10);
        }
    }
}
