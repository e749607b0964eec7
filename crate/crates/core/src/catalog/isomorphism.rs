use std::collections::HashMap;

use crate::incidence::{IncidenceGeometry, Point};
use crate::triangles::enumerate_triangles;

/// Per-point values preserved by every isomorphism.
fn point_invariants(g: &IncidenceGeometry) -> Vec<(usize, usize, usize)> {
    let mut triangles = vec![0usize; g.point_count()];
    for t in enumerate_triangles(g) {
        for p in t.points {
            triangles[p as usize - 1] += 1;
        }
    }
    g.points()
        .map(|p| {
            let collinear = g.points().filter(|&q| g.collinear(p, q)).count();
            (g.point_degree(p), collinear, triangles[p as usize - 1])
        })
        .collect()
}

pub fn are_isomorphic(a: &IncidenceGeometry, b: &IncidenceGeometry) -> bool {
    isomorphism(a, b).is_some()
}

/// A point bijection carrying the lines of `a` onto those of `b`:
/// `map[p - 1]` is the image of point `p`.
pub fn isomorphism(a: &IncidenceGeometry, b: &IncidenceGeometry) -> Option<Vec<Point>> {
    if a.point_count() != b.point_count() || a.line_count() != b.line_count() {
        return None;
    }
    let mut sizes_a: Vec<usize> = a.lines().iter().map(Vec::len).collect();
    let mut sizes_b: Vec<usize> = b.lines().iter().map(Vec::len).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return None;
    }
    let inv_a = point_invariants(a);
    let inv_b = point_invariants(b);
    let mut sorted_a = inv_a.clone();
    let mut sorted_b = inv_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    let mut class_size: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for inv in &inv_a {
        *class_size.entry(*inv).or_default() += 1;
    }

    // Map points with rare invariants first, then those collinear with many
    // already-placed points so inconsistencies surface early.
    let n = a.point_count();
    let mut order: Vec<Point> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = a
            .points()
            .filter(|&p| !placed[p as usize - 1])
            .min_by_key(|&p| {
                let links = order.iter().filter(|&&q| a.collinear(p, q)).count();
                (std::cmp::Reverse(links), class_size[&inv_a[p as usize - 1]], p)
            })
            .unwrap();
        placed[next as usize - 1] = true;
        order.push(next);
    }

    let mut search = Matcher {
        a,
        b,
        inv_a: &inv_a,
        inv_b: &inv_b,
        order: &order,
        map: vec![0; n],
        used: vec![false; n],
        line_ab: vec![None; a.line_count()],
        line_ba: vec![None; b.line_count()],
        trail: Vec::new(),
    };
    search.extend(0).then_some(search.map)
}

struct Matcher<'a> {
    a: &'a IncidenceGeometry,
    b: &'a IncidenceGeometry,
    inv_a: &'a [(usize, usize, usize)],
    inv_b: &'a [(usize, usize, usize)],
    order: &'a [Point],
    map: Vec<Point>,
    used: Vec<bool>,
    line_ab: Vec<Option<usize>>,
    line_ba: Vec<Option<usize>>,
    /// Line pairs fixed so far, for undo.
    trail: Vec<(usize, usize)>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in self.b.points() {
            if self.used[y as usize - 1] || self.inv_b[y as usize - 1] != self.inv_a[x as usize - 1] {
                continue;
            }
            let mark = self.trail.len();
            if self.consistent(depth, x, y) {
                self.map[x as usize - 1] = y;
                self.used[y as usize - 1] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.used[y as usize - 1] = false;
            }
            self.undo(mark);
        }
        false
    }

    /// Checks `x -> y` against every placed point, fixing line images as it goes.
    fn consistent(&mut self, depth: usize, x: Point, y: Point) -> bool {
        for i in 0..depth {
            let p = self.order[i];
            let q = self.map[p as usize - 1];
            match (self.a.line_through(x, p), self.b.line_through(y, q)) {
                (None, None) => {}
                (Some(la), Some(lb)) => match (self.line_ab[la], self.line_ba[lb]) {
                    (None, None) => {
                        self.line_ab[la] = Some(lb);
                        self.line_ba[lb] = Some(la);
                        self.trail.push((la, lb));
                    }
                    (Some(img), Some(pre)) if img == lb && pre == la => {}
                    _ => return false,
                },
                _ => return false,
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (la, lb) = self.trail.pop().unwrap();
            self.line_ab[la] = None;
            self.line_ba[lb] = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::parse_configuration;

    fn relabel(g: &IncidenceGeometry, perm: &[Point]) -> IncidenceGeometry {
        let mut lines: Vec<Vec<Point>> = g
            .lines()
            .iter()
            .map(|l| l.iter().map(|&p| perm[p as usize - 1]).collect())
            .collect();
        lines.reverse();
        IncidenceGeometry::new(g.point_count() as Point, lines).unwrap()
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let fano = parse_configuration("{{1,2,4},{2,3,5},{3,4,6},{4,5,7},{1,5,6},{2,6,7},{1,3,7}}").unwrap();
        let perm = [5, 3, 7, 1, 2, 6, 4];
        let copy = relabel(&fano, &perm);
        let map = isomorphism(&fano, &copy).unwrap();
        let image = relabel(&fano, &map);
        let mut want = copy.lines().to_vec();
        let mut got = image.lines().to_vec();
        want.sort();
        got.sort();
        assert_eq!(want, got);
    }

    #[test]
    fn same_counts_different_structure() {
        // a 6-cycle against two disjoint triangles, both (6_2, 6_2)
        let hexagon = parse_configuration("{{1,2},{2,3},{3,4},{4,5},{5,6},{1,6}}").unwrap();
        let triangles = parse_configuration("{{1,2},{2,3},{1,3},{4,5},{5,6},{4,6}}").unwrap();
        assert!(!are_isomorphic(&hexagon, &triangles));
        assert!(are_isomorphic(&hexagon, &hexagon));
    }

    #[test]
    fn size_mismatch_is_immediate() {
        let one = parse_configuration("{{1,2,3}}").unwrap();
        let two = parse_configuration("{{1,2,3},{3,4,5}}").unwrap();
        assert!(!are_isomorphic(&one, &two));
    }
}
