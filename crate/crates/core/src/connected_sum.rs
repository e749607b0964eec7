//! Connected sum of two configurations by an incidence switch.
//!
//! The right summand's points are relabelled by adding the left point count.
//! Line `l1` of the left trades its point `p1` for the (relabelled) point `p2`
//! and line `l2` of the right trades `p2` for `p1`. Left lines keep their
//! indices; right lines follow them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{Configuration, IncidenceGeometry, Point};
use crate::triangles::enumerate_triangles;

#[derive(Debug, Clone, Copy)]
pub struct SumSpec<'a> {
    pub left: &'a Configuration,
    pub right: &'a Configuration,
    pub p1: Point,
    pub l1: usize,
    /// Label in the right summand before relabelling.
    pub p2: Point,
    pub l2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedSum {
    pub configuration: Configuration,
    /// `partition[p - 1]` is the summand point `p` came from.
    pub partition: Vec<Origin>,
}

/// All incident (point, line index) pairs.
pub fn flags(geometry: &IncidenceGeometry) -> Vec<(Point, usize)> {
    let mut out: Vec<(Point, usize)> = geometry
        .lines()
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.iter().map(move |&p| (p, i)))
        .collect();
    out.sort_unstable();
    out
}

pub fn connected_sum(spec: &SumSpec<'_>) -> Result<ConnectedSum> {
    let (left, right) = (spec.left, spec.right);
    if (left.s(), left.t()) != (right.s(), right.t()) {
        return Err(Error::ParameterMismatch {
            left: (left.s(), left.t()),
            right: (right.s(), right.t()),
        });
    }
    check_flag(left, spec.p1, spec.l1)?;
    check_flag(right, spec.p2, spec.l2)?;

    let offset = left.point_count() as Point;
    let p2 = spec.p2 + offset;
    let mut lines: Vec<Vec<Point>> = left.lines().to_vec();
    for l in right.lines() {
        lines.push(l.iter().map(|&p| p + offset).collect());
    }
    let l2 = left.line_count() + spec.l2;
    for p in lines[spec.l1].iter_mut().filter(|p| **p == spec.p1) {
        *p = p2;
    }
    for p in lines[l2].iter_mut().filter(|p| **p == p2) {
        *p = spec.p1;
    }

    let geometry = IncidenceGeometry::new(offset + right.point_count() as Point, lines)?;
    let configuration = Configuration::try_from(geometry).map_err(Error::NotConfiguration)?;
    let partition = (1..=configuration.point_count() as Point)
        .map(|p| if p <= offset { Origin::Left } else { Origin::Right })
        .collect();
    Ok(ConnectedSum {
        configuration,
        partition,
    })
}

fn check_flag(config: &Configuration, p: Point, line: usize) -> Result<()> {
    if line >= config.line_count() {
        return Err(Error::LineIndex {
            index: line,
            line_count: config.line_count(),
        });
    }
    if !config.contains(line, p) {
        return Err(Error::PointNotOnLine { point: p, line });
    }
    Ok(())
}

/// Triangles with points on both sides of `partition`.
pub fn cross_triangle_count(geometry: &IncidenceGeometry, partition: &[Origin]) -> usize {
    enumerate_triangles(geometry)
        .iter()
        .filter(|t| {
            let origins = t.points.map(|p| partition[p as usize - 1]);
            origins.iter().any(|&o| o != origins[0])
        })
        .count()
}
