//! The library runs in `f32` too, with tolerances floored to what single
//! precision can resolve.

use qlogic::construct::{build_pair, random_isometry_with, rng_from_seed, ConstructionSpec};
use qlogic::transition::{decompose, transition_oracle, transition_probability};
use qlogic::Ring;

#[test]
fn family_values_in_single_precision() {
    let mut rng = rng_from_seed(32);
    for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
        for s in [0.0f32, 0.3, 0.5, 0.9, 1.0] {
            let u = random_isometry_with::<f32, _>(ring, 2, 3, &mut rng).unwrap();
            let (p, q) = build_pair(&ConstructionSpec::new(ring, s, u)).unwrap();
            let fwd = transition_probability(&p, &q).unwrap();
            let bwd = transition_probability(&q, &p).unwrap();
            assert!((fwd.s.unwrap() - s).abs() < 1e-4, "{ring:?} {s}");
            assert!((bwd.s.unwrap() - s).abs() < 1e-4, "{ring:?} {s}");
            let orc = transition_oracle(&p, &q).unwrap();
            assert!((orc.s.unwrap() - s as f64).abs() < 1e-4);
            if s > 0.0 {
                assert!(decompose(&p, &q).unwrap().q_1.is_zero());
            }
        }
    }
}
