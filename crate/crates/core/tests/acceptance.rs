//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use bracket_cover::bounds::{
    dd_over_factorial, height_bound, improved_card_bound, improved_height_bound, new_bound,
    packing_bounds, stirling_factor, thiemard_bound, tree_cardinality_bound,
};
use bracket_cover::decomposer::{build_cover, height, BuildOptions};
use bracket_cover::discrepancy::{disc_sandwich, PointSet};
use bracket_cover::verify::{
    check_delta_recursion, check_monotonicity, check_partition, check_partition_generated,
    check_sibling_weights, exact_star_discrepancy,
};
use bracket_cover::{Point, TypedBracket};
use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GRID_DIMS: [usize; 4] = [1, 2, 3, 4];
const GRID_EPS: [f64; 3] = [0.5, 0.2, 0.1];

fn pass(n: u32, label: &str) {
    println!("criterion {n} ({label}): PASS");
}

#[test]
fn criterion_01_partition_correctness() {
    for d in GRID_DIMS {
        for eps in GRID_EPS {
            let seed = 1_000 + 10 * d as u64 + (eps * 10.0) as u64;
            let report =
                check_partition_generated(d, eps, 100_000, seed, &BuildOptions::default())
                    .unwrap();
            assert!(
                report.check("partition_volume").unwrap().passed,
                "d={d} eps={eps}: {report}"
            );
            assert!(
                report.check("leaf_weights").unwrap().passed,
                "d={d} eps={eps}: {report}"
            );
            assert!(
                report.check("point_coverage").unwrap().passed,
                "d={d} eps={eps}: {report}"
            );
            assert!(report.all_passed(), "d={d} eps={eps}: {report}");
        }
    }
    pass(1, "partition correctness");
}

#[test]
fn criterion_02_sibling_and_corner_weights() {
    for d in GRID_DIMS {
        for eps in GRID_EPS {
            let report = check_sibling_weights(d, eps, &BuildOptions::default()).unwrap();
            assert!(report.all_passed(), "d={d} eps={eps}: {report}");
        }
    }
    pass(2, "decompose-step weight identities");
}

#[test]
fn criterion_03_height_exact_and_bounded() {
    let mut cells: Vec<(usize, f64)> = GRID_DIMS
        .iter()
        .flat_map(|&d| GRID_EPS.iter().map(move |&e| (d, e)))
        .collect();
    cells.push((5, 0.05));
    for (d, eps) in cells {
        let stats = build_cover(d, eps, |_| {}).unwrap();
        let scalar = height(d, eps).unwrap();
        assert_eq!(stats.height, scalar, "d={d} eps={eps}");
        assert!(
            (scalar as u64) <= height_bound(d, eps).unwrap(),
            "d={d} eps={eps}"
        );
        assert!(
            (scalar as u64) <= improved_height_bound(d, eps).unwrap(),
            "d={d} eps={eps}"
        );
    }
    assert_eq!(height(2, 0.5).unwrap(), 2);
    pass(3, "height equals scalar recursion and respects both bounds");
}

#[test]
fn criterion_04_cardinality_vs_bounds() {
    for d in GRID_DIMS {
        for eps in GRID_EPS {
            let stats = build_cover(d, eps, |_| {}).unwrap();
            let tree = tree_cardinality_bound(d, stats.height as u64).unwrap();
            assert!(
                BigUint::from(stats.leaf_count) <= tree,
                "d={d} eps={eps}: {} > {tree}",
                stats.leaf_count
            );
            if d >= 2 {
                let improved = improved_card_bound(d, eps).unwrap();
                assert!(
                    (stats.leaf_count as f64) <= improved,
                    "d={d} eps={eps}: {} > {improved}",
                    stats.leaf_count
                );
            }
        }
    }

    let stats = build_cover(3, 0.1, |_| {}).unwrap();
    assert!(stats.leaf_count <= 4_500, "count = {}", stats.leaf_count);
    let stats = build_cover(2, 0.1, |_| {}).unwrap();
    assert!(stats.leaf_count <= 210, "count = {}", stats.leaf_count);

    pass(4, "cardinality within the binomial, closed-form, and refined bounds");
}

#[test]
fn criterion_05_new_bound_dominates_old() {
    for d in 3..=10 {
        for eps in [0.3, 0.1, 0.03, 0.01] {
            let new = new_bound(d, eps).unwrap();
            let old = thiemard_bound(d, eps).unwrap();
            assert!(new < old, "d={d} eps={eps}: {new} !< {old}");
        }
    }
    pass(5, "sharper cardinality bound strictly below the historical one");
}

#[test]
fn criterion_06_delta_recursion_on_every_edge() {
    for d in [2, 3, 4] {
        for eps in [0.2, 0.1] {
            let report = check_delta_recursion(d, eps, None).unwrap();
            let check = report.check("delta_recursion_agreement").unwrap();
            assert!(
                check.passed,
                "d={d} eps={eps}: worst rel {}",
                check.worst_deviation
            );
        }
    }
    pass(6, "shrink-factor recursion agrees with the direct formula on every edge");
}

#[test]
fn criterion_07_path_monotonicity_dichotomy() {
    for d in [2, 3] {
        for eps in [0.1, 0.05] {
            let seed = 7_000 + d as u64 + (eps * 100.0) as u64;
            let report = check_monotonicity(d, eps, 1_000, seed).unwrap();
            assert!(report.all_passed(), "d={d} eps={eps}: {report}");
        }
    }
    pass(7, "weight and shrink-factor orderings with the exact strict/equal dichotomy");
}

#[test]
fn criterion_08_discrepancy_sandwich() {
    let mut sets: Vec<PointSet> = Vec::new();

    // 50 seeded random sets with n <= 8, d <= 3
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..50 {
        let d = rng.random_range(1..=3);
        let n = rng.random_range(1..=8);
        let points = (0..n)
            .map(|_| {
                Point::new((0..d).map(|_| rng.random::<f64>()).collect()).unwrap()
            })
            .collect();
        sets.push(PointSet::new(points).unwrap());
    }

    // centered grid in one dimension, n = 4: exact discrepancy 1/(2n)
    let centered: Vec<Point> = (0..4)
        .map(|i| Point::new(vec![(2 * i + 1) as f64 / 8.0]).unwrap())
        .collect();
    let centered = PointSet::new(centered).unwrap();
    assert!((exact_star_discrepancy(&centered).unwrap() - 0.125).abs() < 1e-15);
    sets.push(centered);

    // centered 2x2 grid in two dimensions
    let grid = PointSet::new(
        [[0.25, 0.25], [0.25, 0.75], [0.75, 0.25], [0.75, 0.75]]
            .iter()
            .map(|c| Point::new(c.to_vec()).unwrap())
            .collect(),
    )
    .unwrap();
    sets.push(grid);

    for (i, set) in sets.iter().enumerate() {
        let exact = exact_star_discrepancy(set).unwrap();
        for eps in [0.2, 0.05] {
            let b = disc_sandwich(set, eps).unwrap();
            assert!(
                b.lower <= exact + 1e-12,
                "set {i} eps={eps}: lower {} > exact {exact}",
                b.lower
            );
            assert!(
                exact <= b.upper + 1e-12,
                "set {i} eps={eps}: exact {exact} > upper {}",
                b.upper
            );
            assert!(
                b.upper <= exact + eps + 1e-9,
                "set {i} eps={eps}: upper {} > exact {exact} + eps",
                b.upper
            );
        }
    }
    pass(8, "sandwich brackets the exact star discrepancy within epsilon");
}

#[test]
fn criterion_09_packing_comparison() {
    for d in 3..=20 {
        for eps in [0.5, 0.1, 0.01] {
            let p = packing_bounds(d, eps).unwrap();
            assert!(
                p.via_bracketing < p.haussler,
                "d={d} eps={eps}: {} !< {}",
                p.via_bracketing,
                p.haussler
            );
        }
    }
    for d in 1..=20 {
        assert!(dd_over_factorial(d) <= stirling_factor(d), "d = {d}");
    }
    pass(9, "bracketing-route packing bound beats the VC-dimension route");
}

#[test]
fn criterion_10_negative_controls() {
    // Dropped leaf: volume deficit equals the dropped cell, and an uncovered
    // point is found.
    let mut leaves = Vec::new();
    build_cover(2, 0.2, |l| leaves.push(l.clone())).unwrap();
    let seed = 10_101;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probe: Vec<f64> = (0..2).map(|_| rng.random::<f64>()).collect();
    let victim = leaves
        .iter()
        .position(|l| {
            l.cell_contains(&Point::new(probe.clone()).unwrap())
                .unwrap()
        })
        .expect("a correct partition covers the probe point");
    let dropped_volume = leaves[victim].cell_volume();
    let mut mutated = leaves.clone();
    mutated.remove(victim);
    let report = check_partition(&mutated, 2, 0.2, 50_000, seed).unwrap();
    let vol = report.check("partition_volume").unwrap();
    assert!(!vol.passed);
    assert!((vol.worst_deviation - dropped_volume).abs() < 1e-12);
    assert!(!report.check("point_coverage").unwrap().passed);

    // Inflated leaf: overlap and excess volume must be flagged.
    let mut mutated = leaves.clone();
    let victim = mutated
        .iter()
        .position(|l| l.beta().coords()[0] < 0.9)
        .unwrap();
    let old = &mutated[victim];
    let mut beta = old.beta().coords().to_vec();
    beta[0] = (beta[0] * 1.3).min(1.0);
    mutated[victim] = TypedBracket::new(
        old.alpha().clone(),
        Point::new(beta).unwrap(),
        old.type_index(),
    )
    .unwrap();
    let report = check_partition(&mutated, 2, 0.2, 50_000, seed).unwrap();
    assert!(!report.all_passed(), "{report}");

    // Mis-exponented shrink factor: detected for d >= 2 ...
    let faulty = BuildOptions::new().delta_exponent_fault(true);
    for d in [2, 3] {
        let report = check_sibling_weights(d, 0.2, &faulty).unwrap();
        assert!(
            !report.check("corner_child_weight").unwrap().passed,
            "d={d}: {report}"
        );
    }
    // ... and invisible for d = 1, where the exponent degenerates to 1.
    let report = check_sibling_weights(1, 0.2, &faulty).unwrap();
    assert!(report.all_passed(), "{report}");

    pass(10, "mutated covers and the uncorrected shrink exponent are detected");
}
