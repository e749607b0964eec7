//! Invariants checked on random linear geometries. Each geometry is a random
//! subset of a catalog entry's lines under a random relabelling, so linearity
//! holds by construction.

use mono_triangles::catalog::{self, are_isomorphic};
use mono_triangles::coloring::{
    count_monochromatic, min_monochromatic, optimal_color_balance, LineColoring, SearchOptions,
};
use mono_triangles::incidence::parse_configuration;
use mono_triangles::triangles::{enumerate_triangles, line_triple_points, triangles_by_line_triples};
use mono_triangles::{IncidenceGeometry, Point};
use proptest::prelude::*;

fn relabelled_subset(entry: usize, keep: u64, perm: &[usize]) -> IncidenceGeometry {
    let base = catalog::builtins()[entry].geometry.clone();
    let lines: Vec<Vec<Point>> = base
        .lines()
        .iter()
        .enumerate()
        .filter(|(i, _)| keep >> i & 1 == 1)
        .map(|(_, l)| l.iter().map(|&p| perm[p as usize - 1] as Point + 1).collect())
        .collect();
    IncidenceGeometry::from_lines(lines).unwrap()
}

fn geometry() -> impl Strategy<Value = IncidenceGeometry> {
    let entries = catalog::builtins().len();
    (0..entries, any::<u64>(), Just((0..16usize).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|(entry, keep, perm)| relabelled_subset(entry, keep | 1, &perm))
}

fn small_geometry() -> impl Strategy<Value = IncidenceGeometry> {
    geometry().prop_filter("at most 14 lines", |g| g.line_count() <= 14)
}

fn with_coloring() -> impl Strategy<Value = (IncidenceGeometry, LineColoring)> {
    geometry().prop_flat_map(|g| {
        let m = g.line_count();
        (Just(g), any::<u64>().prop_map(move |mask| LineColoring::from_mask(mask, m)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brace_round_trip(g in geometry()) {
        prop_assert_eq!(parse_configuration(&g.to_brace_string()).unwrap(), g);
    }

    #[test]
    fn plain_round_trip(g in geometry()) {
        prop_assert_eq!(parse_configuration(&g.to_plain_string()).unwrap(), g);
    }

    #[test]
    fn relabelling_preserves_isomorphism(g in geometry(), perm in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle()) {
        let n = g.point_count();
        let mut perm: Vec<usize> = perm.into_iter().filter(|&p| p < n).collect();
        perm.truncate(n);
        let lines = g.lines().iter().map(|l| l.iter().map(|&p| perm[p as usize - 1] as Point + 1).collect()).collect();
        let h = IncidenceGeometry::new(n as Point, lines).unwrap();
        prop_assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn duality_is_a_bijection(g in geometry()) {
        let by_points = enumerate_triangles(&g);
        let mut from_points: Vec<[usize; 3]> = by_points.iter().map(|t| t.lines).collect();
        from_points.sort_unstable();
        let by_lines = triangles_by_line_triples(&g);
        prop_assert_eq!(&from_points, &by_lines);
        for t in &by_points {
            prop_assert_eq!(line_triple_points(&g, t.lines), Some(t.points));
        }
    }

    #[test]
    fn swapping_colors_swaps_counts((g, c) in with_coloring()) {
        let (r, b) = count_monochromatic(&g, &c).unwrap();
        prop_assert_eq!(count_monochromatic(&g, &c.swapped()).unwrap(), (b, r));
    }

    #[test]
    fn counts_match_direct_definition((g, c) in with_coloring()) {
        let (r, b) = count_monochromatic(&g, &c).unwrap();
        let pts: Vec<Point> = g.points().collect();
        let (mut rr, mut bb) = (0, 0);
        for (i, &p) in pts.iter().enumerate() {
            for (j, &q) in pts.iter().enumerate().skip(i + 1) {
                for &s in &pts[j + 1..] {
                    let ls = [g.line_through(p, q), g.line_through(q, s), g.line_through(p, s)];
                    let [Some(a), Some(bq), Some(cq)] = ls else { continue };
                    if a == bq || a == cq || bq == cq {
                        continue;
                    }
                    let colors = [a, bq, cq].map(|l| c.color(l));
                    rr += colors.iter().all(|&x| x == mono_triangles::coloring::Color::Red) as usize;
                    bb += colors.iter().all(|&x| x == mono_triangles::coloring::Color::Blue) as usize;
                }
            }
        }
        prop_assert_eq!((r, b), (rr, bb));
    }

    #[test]
    fn witness_recounts_to_minimum(g in small_geometry()) {
        let result = min_monochromatic(&g, &SearchOptions::default()).unwrap();
        let (r, b) = count_monochromatic(&g, &result.witness).unwrap();
        prop_assert_eq!(r + b, result.min_total);
        prop_assert_eq!((r, b), (result.witness_red_count, result.witness_blue_count));
        prop_assert_eq!(result.witness.color(0), mono_triangles::coloring::Color::Red);
    }

    #[test]
    fn modes_agree(g in small_geometry()) {
        let ex = min_monochromatic(&g, &SearchOptions::default()).unwrap();
        let bb = min_monochromatic(&g, &SearchOptions::branch_and_bound()).unwrap();
        prop_assert_eq!(ex, bb);
        prop_assert_eq!(
            optimal_color_balance(&g, &SearchOptions::default()).unwrap(),
            optimal_color_balance(&g, &SearchOptions::branch_and_bound()).unwrap()
        );
    }

    #[test]
    fn sampled_colorings_never_beat_the_minimum((g, c) in with_coloring()) {
        prop_assume!(g.line_count() <= 14);
        let (r, b) = count_monochromatic(&g, &c).unwrap();
        let min = min_monochromatic(&g, &SearchOptions::default()).unwrap().min_total;
        prop_assert!(r + b >= min);
    }
}

#[test]
fn modes_agree_on_every_catalog_entry() {
    for entry in catalog::builtins() {
        let ex = min_monochromatic(&entry.geometry, &SearchOptions::default()).unwrap();
        let bb = min_monochromatic(&entry.geometry, &SearchOptions::branch_and_bound()).unwrap();
        assert_eq!(ex, bb, "{}", entry.name);
    }
}
