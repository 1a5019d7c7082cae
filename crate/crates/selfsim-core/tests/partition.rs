//! Frontier partition checks against independent oracles: the Fibonacci
//! recursion for golden-bee frontier sizes, the area identity in exponent
//! form, and direct pairwise clipping for interior-disjointness.

use selfsim_core::addresses::{frontier, FRONTIER_CAP};
use selfsim_core::geometry::Tolerance;
use selfsim_core::pairs::{catalog, CatalogName};
use selfsim_core::tiling::verify_partition;

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn golden_bee_frontier_sizes_follow_fibonacci() {
    let pair = catalog(&CatalogName::GoldenBee, &tol()).unwrap();
    // Independent oracle: |S_n| = |S_{n-1}| + |S_{n-2}| seeded by 2, 3.
    let mut expect = vec![2usize, 3];
    for n in 2..12 {
        let next = expect[n - 1] + expect[n - 2];
        expect.push(next);
    }
    for n in 1..=12u32 {
        let f = frontier(&pair, n, FRONTIER_CAP).unwrap();
        assert_eq!(f.addresses.len(), expect[(n - 1) as usize], "level {n}");
    }
}

#[test]
fn catalog_partitions_hold_to_level_six() {
    let names = [
        CatalogName::GoldenBee,
        CatalogName::RightTriangle(2, 1),
        CatalogName::Trapezoid(3, 1),
        CatalogName::SporadicA,
        CatalogName::SporadicC,
        CatalogName::SporadicD,
        CatalogName::Square4,
        CatalogName::RectReducible,
    ];
    for name in names {
        let pair = catalog(&name, &tol()).unwrap();
        for n in 1..=6u32 {
            let rep = verify_partition(&pair, n, FRONTIER_CAP, &tol()).unwrap();
            assert!(
                rep.area_defect_rel < 1e-8,
                "{name} level {n}: area defect {}",
                rep.area_defect_rel
            );
            assert!(
                rep.max_overlap < 1e-9,
                "{name} level {n}: overlap {}",
                rep.max_overlap
            );
            assert!(
                rep.weight_sum_defect < 1e-10,
                "{name} level {n}: weight sum defect {}",
                rep.weight_sum_defect
            );
        }
    }
}

#[test]
fn partition_detects_broken_pairs() {
    // Remove nothing but inflate the polygon slightly: same maps no longer
    // partition it, which must show as an area defect.
    use selfsim_core::geometry::{Point, Polygon, Similitude};
    use selfsim_core::pairs::validate_pair;

    let sq = Polygon::new(
        vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ],
        &tol(),
    )
    .unwrap();
    let grown = Polygon::new(
        vec![
            Point::new(0.0, 0.0),
            Point::new(1.05, 0.0),
            Point::new(1.05, 1.0),
            Point::new(0.0, 1.0),
        ],
        &tol(),
    )
    .unwrap();
    let maps: Vec<Similitude> = [
        (0.0, 0.0),
        (0.5, 0.0),
        (0.0, 0.5),
        (0.5, 0.5),
    ]
    .iter()
    .map(|&(x, y)| Similitude::direct((0.5, 0.0), Point::new(x, y)))
    .collect();
    assert!(validate_pair(sq, maps.clone(), &tol()).is_ok());
    assert!(validate_pair(grown, maps, &tol()).is_err());
}
