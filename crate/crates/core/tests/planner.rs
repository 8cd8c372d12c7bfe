use std::collections::BTreeSet;

use cip_core::plan::{plan_baseline, plan_cip, BaselineOptions, Dims, LevelName, Strategy};
use cip_core::ratio::{
    closest_ratio, coincidence_count, filter_adaptive, generate_candidates, group_candidates,
    AspectRatio, DETAILED_MIN_TILES,
};
use proptest::prelude::*;

fn ar(rows: u32, cols: u32) -> AspectRatio {
    AspectRatio { rows, cols }
}

/// Reduced fraction `n/d`, used to enumerate grid-line positions exactly.
fn reduced(n: u32, d: u32) -> (u32, u32) {
    let (mut a, mut b) = (n, d);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    (n / a, d / a)
}

fn interior_lines(n: u32) -> BTreeSet<(u32, u32)> {
    (1..n).map(|i| reduced(i, n)).collect()
}

fn coincidence_oracle(a: AspectRatio, b: AspectRatio) -> usize {
    interior_lines(a.cols)
        .intersection(&interior_lines(b.cols))
        .count()
        + interior_lines(a.rows)
            .intersection(&interior_lines(b.rows))
            .count()
}

/// Exact `|w/h - c/r|` as a reduced fraction compared by cross products.
fn distance(w: u32, h: u32, g: AspectRatio) -> (u128, u128) {
    let num = (w as i128 * g.rows as i128 - h as i128 * g.cols as i128).unsigned_abs();
    (num, h as u128 * g.rows as u128)
}

fn closest_oracle(w: u32, h: u32, pool: &[AspectRatio]) -> AspectRatio {
    let mut best = pool[0];
    for &g in &pool[1..] {
        let (n1, d1) = distance(w, h, g);
        let (n2, d2) = distance(w, h, best);
        let closer = n1 * d2 < n2 * d1;
        let tie = n1 * d2 == n2 * d1;
        if closer
            || (tie && g.tile_count() > best.tile_count())
            || (tie && g.tile_count() == best.tile_count() && g.cols > best.cols)
        {
            best = g;
        }
    }
    best
}

/// Straight-line restatement of the pyramid selection rules.
fn cip_oracle(w: u32, h: u32, budget: u32) -> Option<(AspectRatio, AspectRatio, bool)> {
    let all: Vec<AspectRatio> = (1..=budget)
        .flat_map(|r| (1..=budget).map(move |c| ar(r, c)))
        .filter(|g| g.tile_count() <= budget)
        .collect();
    let detailed: Vec<_> = all
        .iter()
        .copied()
        .filter(|g| g.tile_count() >= 10 && g.tile_count() + 4 <= budget)
        .collect();
    if detailed.is_empty() {
        return None;
    }
    let d = closest_oracle(w, h, &detailed);
    let adaptive: Vec<_> = all
        .iter()
        .copied()
        .filter(|g| (3..=8).contains(&g.tile_count()) && d.tile_count() + g.tile_count() < budget)
        .collect();
    let kept: Vec<_> = adaptive
        .iter()
        .copied()
        .filter(|a| {
            (1..=d.rows).all(|k| d.rows != k * a.rows) && (1..=d.cols).all(|k| d.cols != k * a.cols)
        })
        .collect();
    if !kept.is_empty() {
        return Some((d, closest_oracle(w, h, &kept), false));
    }
    let best = adaptive.iter().map(|&a| coincidence_oracle(a, d)).min()?;
    let fewest: Vec<_> = adaptive
        .into_iter()
        .filter(|&a| coincidence_oracle(a, d) == best)
        .collect();
    Some((d, closest_oracle(w, h, &fewest), true))
}

#[test]
fn candidate_enumeration_budget_6() {
    let got = generate_candidates(6).unwrap();
    let expected: Vec<_> = [
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (1, 6),
        (2, 1),
        (2, 2),
        (2, 3),
        (3, 1),
        (3, 2),
        (4, 1),
        (5, 1),
        (6, 1),
    ]
    .into_iter()
    .map(|(r, c)| ar(r, c))
    .collect();
    assert_eq!(got, expected);
}

#[test]
fn candidates_match_brute_force() {
    for budget in 1..=64 {
        let got: BTreeSet<_> = generate_candidates(budget).unwrap().into_iter().collect();
        let brute: BTreeSet<_> = (1..=64)
            .flat_map(|r| (1..=64).map(move |c| ar(r, c)))
            .filter(|g| g.tile_count() <= budget)
            .collect();
        assert_eq!(got, brute, "budget {budget}");
        assert_eq!(got.len(), generate_candidates(budget).unwrap().len());
    }
}

#[test]
fn budget_24_groups() {
    let g = group_candidates(&generate_candidates(24).unwrap(), 24, DETAILED_MIN_TILES);
    assert!(g.detailed.contains(&ar(4, 5)));
    assert!(g.adaptive.contains(&ar(2, 3)));
    assert!(!g.detailed.contains(&ar(3, 3)) && !g.adaptive.contains(&ar(3, 3)));
    assert!(!g.detailed.contains(&ar(4, 6)));
    assert_eq!(g.global, vec![AspectRatio::UNIT]);
    assert!(!g.detailed.contains(&AspectRatio::UNIT) && !g.adaptive.contains(&AspectRatio::UNIT));
    let d: BTreeSet<_> = g.detailed.iter().collect();
    assert!(g.adaptive.iter().all(|a| !d.contains(a)));
    for r in &g.detailed {
        assert!((10..=20).contains(&r.tile_count()));
    }
    for r in &g.adaptive {
        assert!((3..=8).contains(&r.tile_count()));
    }
}

#[test]
fn closest_three_quarters_in_detailed_pool() {
    let g = group_candidates(&generate_candidates(24).unwrap(), 24, DETAILED_MIN_TILES);
    assert_eq!(
        closest_ratio(Dims::new(3, 4), &g.detailed).unwrap(),
        ar(4, 3)
    );
    assert_eq!(closest_oracle(3, 4, &g.detailed), ar(4, 3));
}

#[test]
fn coincidence_examples() {
    assert_eq!(coincidence_oracle(ar(2, 2), ar(4, 4)), 2);
    assert_eq!(coincidence_count(ar(2, 2), ar(4, 4)), 2);
    assert_eq!(coincidence_count(ar(3, 5), ar(4, 7)), 0);
    assert_eq!(coincidence_count(ar(1, 1), ar(4, 4)), 0);
}

#[test]
fn coincidence_matches_rational_enumeration() {
    for r1 in 1..=12 {
        for c1 in 1..=12 {
            for r2 in 1..=12 {
                for c2 in 1..=12 {
                    let (a, b) = (ar(r1, c1), ar(r2, c2));
                    assert_eq!(
                        coincidence_count(a, b) as usize,
                        coincidence_oracle(a, b),
                        "{a} vs {b}"
                    );
                }
            }
        }
    }
}

#[test]
fn pipeline_examples() {
    let p = plan_cip(Dims::new(1344, 896), 24, 448).unwrap();
    assert_eq!((p.levels[0].grid, p.levels[1].grid), (ar(3, 5), ar(2, 3)));
    let g = group_candidates(&generate_candidates(24).unwrap(), 24, DETAILED_MIN_TILES);
    assert_eq!(
        filter_adaptive(ar(3, 5), &g.adaptive),
        vec![ar(2, 2), ar(2, 3), ar(2, 4), ar(4, 2)]
    );

    let sq = plan_cip(Dims::new(448, 448), 24, 448).unwrap();
    assert_eq!(sq.levels[0].grid, ar(4, 4));
    assert!(filter_adaptive(ar(4, 4), &g.adaptive).is_empty());
    assert!(sq.adaptive_fallback);
    assert_eq!(sq.levels[1].grid, ar(3, 1));
    assert_eq!(coincidence_count(ar(3, 1), ar(4, 4)), 0);
}

#[test]
fn plan_cip_matches_oracle_over_grid_of_inputs() {
    for budget in [14, 18, 24, 32, 48] {
        for w in (1..=4000).step_by(173) {
            for h in (1..=4000).step_by(191) {
                let got = plan_cip(Dims::new(w, h), budget, 448).unwrap();
                let (d, a, fb) = cip_oracle(w, h, budget).unwrap();
                assert_eq!(
                    (
                        got.levels[0].grid,
                        got.levels[1].grid,
                        got.adaptive_fallback
                    ),
                    (d, a, fb),
                    "{w}x{h} b{budget}"
                );
            }
        }
    }
    assert!(cip_oracle(10, 10, 13).is_none());
}

#[test]
fn dynamic_matches_oracle() {
    for (w, h) in [(896, 896), (1920, 1080), (300, 4000), (7, 3)] {
        let p = plan_baseline(
            Strategy::Dynamic,
            Dims::new(w, h),
            24,
            448,
            &BaselineOptions::default(),
        )
        .unwrap();
        assert_eq!(p.levels.len(), 1);
        assert_eq!(
            p.levels[0].grid,
            closest_oracle(w, h, &generate_candidates(24).unwrap())
        );
    }
}

fn assert_partition(p: &cip_core::PyramidPlan) {
    for level in &p.levels {
        let canvas = level.resized.area();
        assert_eq!(level.tiles.iter().map(|t| t.area()).sum::<u64>(), canvas);
        for (i, a) in level.tiles.iter().enumerate() {
            assert_eq!((a.w, a.h), (p.tile_side, p.tile_side));
            assert!(a.x + a.w <= level.resized.w && a.y + a.h <= level.resized.h);
            for b in &level.tiles[i + 1..] {
                assert_eq!(a.intersection_area(b), 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn cip_invariants(w in 1u32..=8192, h in 1u32..=8192, budget in prop::sample::select(vec![18u32, 24, 32, 48])) {
        let p = plan_cip(Dims::new(w, h), budget, 448).unwrap();
        prop_assert!(p.total_tiles() <= budget as usize);
        assert_partition(&p);
        let d = p.level(LevelName::Detailed).unwrap().grid;
        let a = p.level(LevelName::Adaptive).unwrap().grid;
        let g = p.level(LevelName::Global).unwrap().grid;
        prop_assert_eq!(g, AspectRatio::UNIT);
        prop_assert!(d.tile_count() > a.tile_count() && a.tile_count() > g.tile_count());
        if !p.adaptive_fallback {
            prop_assert!(!d.rows.is_multiple_of(a.rows) && !d.cols.is_multiple_of(a.cols));
            // neither axis of the adaptive grid nests inside the detailed one
            prop_assert!(coincidence_oracle(ar(1, a.cols), ar(1, d.cols)) < (a.cols - 1) as usize || a.cols == 1);
            prop_assert!(coincidence_oracle(ar(a.rows, 1), ar(d.rows, 1)) < (a.rows - 1) as usize || a.rows == 1);
        }
        prop_assert_eq!(&p, &plan_cip(Dims::new(w, h), budget, 448).unwrap());
    }

    #[test]
    fn baselines_partition(w in 1u32..=8192, h in 1u32..=8192, which in 0usize..3) {
        let s = [Strategy::Dynamic, Strategy::Fixed, Strategy::MultiscaleFixed][which];
        let p = plan_baseline(s, Dims::new(w, h), 24, 448, &BaselineOptions::default()).unwrap();
        assert_partition(&p);
    }

    #[test]
    fn overlapping_covers_canvas(w in 1u32..=8192, h in 1u32..=8192, frac in 0.0f64..0.95) {
        let opts = BaselineOptions { overlap_frac: frac, ..Default::default() };
        let p = plan_baseline(Strategy::Overlapping, Dims::new(w, h), 24, 64, &opts).unwrap();
        let level = &p.levels[0];
        let (rows, cols) = level.tile_layout();
        prop_assert_eq!(rows * cols, level.tiles.len());
        let last = level.tiles.last().unwrap();
        prop_assert_eq!((last.x + last.w, last.y + last.h), (level.resized.w, level.resized.h));
        let shared = (frac * 64.0).floor() as u32;
        for pair in level.tiles[..cols].windows(2) {
            let overlap = pair[0].x + pair[0].w - pair[1].x;
            prop_assert!(overlap >= shared.min(64));
        }
    }

    #[test]
    fn filter_matches_divisibility(dr in 1u32..=8, dc in 1u32..=8) {
        let d = ar(dr, dc);
        let pool = group_candidates(&generate_candidates(24).unwrap(), 24, DETAILED_MIN_TILES).adaptive;
        let kept = filter_adaptive(d, &pool);
        for a in pool {
            let survives = (1..=8).all(|k| dr != k * a.rows) && (1..=8).all(|k| dc != k * a.cols);
            prop_assert_eq!(kept.contains(&a), survives);
        }
    }
}
