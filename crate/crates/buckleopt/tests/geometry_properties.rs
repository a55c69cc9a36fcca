//! Property tests for the geometric invariants: scaling and translation
//! behavior of the measurements, hull laws, and the diameter-perimeter
//! bound, over a randomized domain corpus.

use buckleopt::geometry::{hausdorff_distance, DomainSpec};
use proptest::prelude::*;

fn arb_polygon() -> impl Strategy<Value = DomainSpec> {
    // radial polygons are always simple and CCW
    (4usize..24, 0.2f64..2.0, proptest::collection::vec(0.0f64..1.0, 24))
        .prop_map(|(n, base, jitter)| {
            let vertices: Vec<[f64; 2]> = (0..n)
                .map(|i| {
                    let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    let r = base * (0.55 + 0.45 * jitter[i]);
                    [r * theta.cos(), r * theta.sin()]
                })
                .collect();
            DomainSpec::polygon(vertices)
        })
}

fn arb_star() -> impl Strategy<Value = DomainSpec> {
    (
        0.3f64..2.0,
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..5),
        -1.0f64..1.0,
        -1.0f64..1.0,
    )
        .prop_map(|(r0, raw, cx, cy)| {
            // keep sum |coeffs| under 40% of r0 so the radius stays positive
            let k = raw.len() as f64;
            let coeffs: Vec<[f64; 2]> = raw
                .iter()
                .map(|(a, b)| [0.2 * r0 * a / k, 0.2 * r0 * b / k])
                .collect();
            DomainSpec::star([cx, cy], r0, coeffs)
        })
}

fn arb_domain() -> impl Strategy<Value = DomainSpec> {
    prop_oneof![
        arb_polygon(),
        arb_star(),
        (0.1f64..3.0, -2.0f64..2.0, -2.0f64..2.0)
            .prop_map(|(r, x, y)| DomainSpec::disk([x, y], r)),
        (0.1f64..3.0, 0.1f64..3.0, -2.0f64..2.0, -2.0f64..2.0)
            .prop_map(|(w, h, x, y)| DomainSpec::rect([x, y], w, h)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn measurements_scale_correctly(domain in arb_domain(), t in 0.2f64..4.0) {
        let scaled = domain.scale(t).unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        prop_assert!(rel(scaled.perimeter().unwrap(), t * domain.perimeter().unwrap()) < 1e-10);
        prop_assert!(rel(scaled.area().unwrap(), t * t * domain.area().unwrap()) < 1e-10);
        prop_assert!(rel(scaled.diameter().unwrap(), t * domain.diameter().unwrap()) < 1e-10);
    }

    #[test]
    fn measurements_are_translation_invariant(domain in arb_domain(), dx in -5.0f64..5.0, dy in -5.0f64..5.0) {
        let moved = domain.translate(dx, dy);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        prop_assert!(rel(moved.perimeter().unwrap(), domain.perimeter().unwrap()) < 1e-10);
        prop_assert!(rel(moved.area().unwrap(), domain.area().unwrap()) < 1e-10);
        prop_assert!(rel(moved.diameter().unwrap(), domain.diameter().unwrap()) < 1e-10);
    }

    #[test]
    fn diameter_below_half_perimeter(domain in arb_domain()) {
        prop_assert!(domain.diameter().unwrap() < domain.perimeter().unwrap() / 2.0);
    }

    #[test]
    fn hull_laws(domain in arb_domain()) {
        let hull = domain.convex_hull().unwrap();
        // contains every vertex / boundary sample source point
        if let DomainSpec::Polygon { vertices } = &domain {
            for v in vertices {
                prop_assert!(hull.contains_closed(buckleopt::geometry::Point2::new(v[0], v[1])));
            }
        }
        // hull perimeter never exceeds the input perimeter (quadrature slack)
        prop_assert!(hull.perimeter() <= domain.perimeter().unwrap() * (1.0 + 1e-9));
        // idempotence
        let rehull = DomainSpec::from(hull.clone()).convex_hull().unwrap();
        prop_assert_eq!(hull.len(), rehull.len());
        prop_assert!(DomainSpec::from(hull).is_convex().unwrap());
    }

    #[test]
    fn saturation_is_idempotent(domain in arb_domain(), p in 0.5f64..20.0) {
        let once = domain.saturate_perimeter(p).unwrap();
        prop_assert!((once.perimeter().unwrap() - p).abs() <= 1e-9 * p);
        let twice = once.saturate_perimeter(p).unwrap();
        prop_assert!((twice.perimeter().unwrap() - p).abs() <= 1e-9 * p);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        prop_assert!(rel(twice.area().unwrap(), once.area().unwrap()) < 1e-9);
    }
}

#[test]
fn hausdorff_is_symmetric_and_zero_on_identity() {
    let a = DomainSpec::star([0.0, 0.0], 1.0, vec![[0.1, 0.05]]);
    let b = DomainSpec::disk([0.3, 0.0], 0.8);
    let ab = hausdorff_distance(&a, &b).unwrap();
    let ba = hausdorff_distance(&b, &a).unwrap();
    assert_eq!(ab, ba);
    assert!(ab > 0.0);
    assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
}
