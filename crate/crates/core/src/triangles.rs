//! Triangles of an incidence geometry: three points, pairwise joined by three
//! distinct lines, no line containing all three.

use serde::Serialize;

use crate::incidence::{IncidenceGeometry, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triangle {
    /// Sorted point labels.
    pub points: [Point; 3],
    /// Sorted line indices.
    pub lines: [usize; 3],
}

/// Every triangle once, sorted by point triple.
pub fn enumerate_triangles(geometry: &IncidenceGeometry) -> Vec<Triangle> {
    let n = geometry.point_count() as Point;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let Some(ab) = geometry.line_through(a, b) else {
                continue;
            };
            for c in b + 1..=n {
                let (Some(bc), Some(ac)) = (geometry.line_through(b, c), geometry.line_through(a, c))
                else {
                    continue;
                };
                if ab == bc {
                    continue;
                }
                debug_assert!(ab != ac && bc != ac);
                debug_assert!(
                    !geometry.contains(ab, c) && !geometry.contains(bc, a) && !geometry.contains(ac, b)
                );
                let mut lines = [ab, bc, ac];
                lines.sort_unstable();
                out.push(Triangle {
                    points: [a, b, c],
                    lines,
                });
            }
        }
    }
    out
}

/// Line triples meeting pairwise in three distinct points, sorted.
pub fn triangles_by_line_triples(geometry: &IncidenceGeometry) -> Vec<[usize; 3]> {
    let m = geometry.line_count();
    let meet: Vec<Vec<Option<Point>>> = (0..m)
        .map(|a| (0..m).map(|b| geometry.intersection(a, b)).collect())
        .collect();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let Some(pij) = meet[i][j] else { continue };
            for k in j + 1..m {
                let (Some(pjk), Some(pik)) = (meet[j][k], meet[i][k]) else {
                    continue;
                };
                if pij != pjk && pij != pik && pjk != pik {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// The three vertices of a line triple, if it is a triangle.
pub fn line_triple_points(geometry: &IncidenceGeometry, lines: [usize; 3]) -> Option<[Point; 3]> {
    let [i, j, k] = lines;
    let mut points = [
        geometry.intersection(i, j)?,
        geometry.intersection(j, k)?,
        geometry.intersection(i, k)?,
    ];
    points.sort_unstable();
    (points[0] != points[1] && points[1] != points[2]).then_some(points)
}

pub fn triangle_count(geometry: &IncidenceGeometry) -> usize {
    enumerate_triangles(geometry).len()
}

/// One triangle per row: `p1 p2 p3 | li lj lk`.
pub fn format_triangles(triangles: &[Triangle]) -> String {
    let mut out = String::new();
    for t in triangles {
        out.push_str(&format!(
            "{} {} {} | {} {} {}\n",
            t.points[0], t.points[1], t.points[2], t.lines[0], t.lines[1], t.lines[2]
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::parse_configuration;

    #[test]
    fn single_line_has_no_triangles() {
        let g = parse_configuration("{{1,2,3}}").unwrap();
        assert!(enumerate_triangles(&g).is_empty());
        assert!(triangles_by_line_triples(&g).is_empty());
    }

    #[test]
    fn two_lines_have_no_line_triples() {
        let g = parse_configuration("{{1,2,3},{3,4,5}}").unwrap();
        assert!(triangles_by_line_triples(&g).is_empty());
    }

    #[test]
    fn smallest_triangle() {
        let g = parse_configuration("{{1,2},{2,3},{1,3}}").unwrap();
        assert_eq!(
            enumerate_triangles(&g),
            vec![Triangle {
                points: [1, 2, 3],
                lines: [0, 1, 2]
            }]
        );
        assert_eq!(line_triple_points(&g, [0, 1, 2]), Some([1, 2, 3]));
    }

    #[test]
    fn concurrent_lines_are_not_a_triangle() {
        let g = parse_configuration("{{1,2,3},{1,4,5},{1,6,7}}").unwrap();
        assert!(triangles_by_line_triples(&g).is_empty());
        assert_eq!(line_triple_points(&g, [0, 1, 2]), None);
    }

    #[test]
    fn text_rows() {
        let g = parse_configuration("{{1,2},{2,3},{1,3}}").unwrap();
        assert_eq!(format_triangles(&enumerate_triangles(&g)), "1 2 3 | 0 1 2\n");
    }
}
