use bihilb_core::combinatorics::{Bidegree, Shape};
use bihilb_core::experiments::{
    double_prime_check, double_prime_with, generic_projection_experiment, projection_profiles,
    verify_formula_vs_oracle,
};
use bihilb_core::hilbert::{default_window, Window};
use bihilb_core::linalg::PrimeField;
use bihilb_core::oracle::{paper_example, random_instance, stream_instance};
use bihilb_core::regions::RegionSpec;
use bihilb_core::Error;

fn bd(a: i64, b: i64) -> Bidegree {
    Bidegree::new(a, b)
}

#[test]
fn two_generic_points_project_injectively() {
    let rep = generic_projection_experiment(Shape::new(1, 1).unwrap(), bd(1, 1), 32003, 5, 4).unwrap();
    assert_eq!(rep.degree, 2);
    assert!(rep.generic);
    assert!(rep.stabilization_a.unwrap() <= 2 && rep.stabilization_b.unwrap() <= 2);
    for p in [&rep.profile_a, &rep.profile_b] {
        assert!(p.windows(2).all(|w| w[0] <= w[1] && w[1] <= rep.degree));
    }
}

#[test]
fn example_instance_projections_are_not_injective() {
    let spec = RegionSpec::new(Shape::new(2, 2).unwrap(), bd(2, 2)).unwrap();
    let inst = paper_example(PrimeField::new(32003).unwrap());
    let rep = projection_profiles(&spec, &inst, None, 8).unwrap();
    assert_eq!(rep.profile_a[..8], [1, 3, 6, 10, 15, 21, 24, 24]);
    assert!(!rep.generic);
    assert!(rep.cells_below_degree > 0);
    assert!(matches!(projection_profiles(&spec, &inst, None, 5), Err(Error::WindowTooSmall { .. })));
}

#[test]
fn stream_instances_agree_across_primes() {
    let spec = RegionSpec::new(Shape::new(1, 2).unwrap(), bd(1, 1)).unwrap();
    let w = default_window(&spec);
    for seed in 0..3 {
        assert!(double_prime_check(&spec, w, seed, 2_147_483_659, 1_000_000_007).unwrap());
    }
    assert!(matches!(double_prime_check(&spec, w, 0, 101, 101), Err(Error::SamePrime(101))));
}

#[test]
fn a_failing_side_is_a_disagreement() {
    let w = Window::new(bd(0, 0), bd(3, 3)).unwrap();
    let out = double_prime_with(w, 2, 32003, |f| {
        if f.modulus() == 2 {
            Err(Error::NotCompleteIntersection("forced".into()))
        } else {
            stream_instance(Shape::new(1, 1).unwrap(), bd(1, 1), f, 1)
        }
    })
    .unwrap();
    assert!(!out.agree);
    assert_eq!(out.errors.len(), 1);
}

#[test]
fn verify_rejects_wrong_degree() {
    let spec = RegionSpec::new(Shape::new(1, 1).unwrap(), bd(2, 2)).unwrap();
    let inst = random_instance(Shape::new(1, 1).unwrap(), bd(1, 1), PrimeField::new(32003).unwrap(), 0).unwrap();
    let r = verify_formula_vs_oracle(&spec, default_window(&spec), &inst, "x");
    assert!(matches!(r, Err(Error::ShapeMismatch(_))));
}

#[test]
fn verify_report_serializes() {
    let spec = RegionSpec::new(Shape::new(1, 1).unwrap(), bd(1, 2)).unwrap();
    let inst = random_instance(spec.shape(), spec.d(), PrimeField::new(32003).unwrap(), 2).unwrap();
    let rep = verify_formula_vs_oracle(&spec, default_window(&spec), &inst, "seed=2").unwrap();
    assert!(rep.ok());
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    assert_eq!(v["instance"], "seed=2");
    assert!(rep.to_text().contains("seed=2"));
}
