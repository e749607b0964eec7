//! Orderly backtracking over symmetric `v_3` configurations.
//!
//! Lines are generated in sorted order: the next line always has as its
//! smallest point the smallest point still on fewer than three lines, and
//! lines sharing a smallest point appear in increasing order. Every labelled
//! configuration therefore arises at most once. Point 1's three lines are
//! fixed to `{1,2,3}, {1,4,5}, {1,6,7}`, which every isomorphism class admits
//! after relabelling. Survivors are reduced to one per isomorphism class by
//! pairwise testing within buckets of equal invariants.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::isomorphism::are_isomorphic;
use crate::error::{Error, Result};
use crate::incidence::{Configuration, IncidenceGeometry, Point};
use crate::triangles::enumerate_triangles;

pub const ENUMERATION_RANGE: RangeInclusive<usize> = 7..=11;

/// All symmetric `v_3` configurations on `v` points, one per isomorphism class.
pub fn enumerate_v3(v: usize) -> Result<Vec<Configuration>> {
    if !ENUMERATION_RANGE.contains(&v) {
        return Err(Error::EnumerationRange { v });
    }
    let mut root = State::new(v);
    for line in [[0, 1, 2], [0, 3, 4], [0, 5, 6]] {
        root.push(line);
    }
    let branches = root.children();
    let labelled: Vec<Vec<[u8; 3]>> = branches
        .into_par_iter()
        .flat_map_iter(|line| {
            let mut state = root.clone();
            state.push(line);
            let mut out = Vec::new();
            state.complete(&mut out);
            out
        })
        .collect();

    let candidates: Vec<(Vec<(usize, usize)>, IncidenceGeometry)> = labelled
        .into_par_iter()
        .map(|lines| {
            let lines = lines
                .iter()
                .map(|l| l.iter().map(|&p| p as Point + 1).collect())
                .collect();
            let geometry = IncidenceGeometry::new(v as Point, lines).expect("search keeps linearity");
            (invariant(&geometry), geometry)
        })
        .collect();

    let mut buckets: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
    let mut representatives: Vec<IncidenceGeometry> = Vec::new();
    for (key, geometry) in candidates {
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().any(|&r| are_isomorphic(&representatives[r], &geometry)) {
            continue;
        }
        bucket.push(representatives.len());
        representatives.push(geometry);
    }
    Ok(representatives
        .into_iter()
        .map(|g| Configuration::try_from(g).expect("every point has degree 3"))
        .collect())
}

/// Sorted per-point (triangles through the point, triangles among its non-collinear points).
fn invariant(g: &IncidenceGeometry) -> Vec<(usize, usize)> {
    let mut through = vec![0usize; g.point_count()];
    for t in enumerate_triangles(g) {
        for p in t.points {
            through[p as usize - 1] += 1;
        }
    }
    let mut key: Vec<(usize, usize)> = g
        .points()
        .map(|p| {
            let far: Vec<Point> = g.points().filter(|&q| q != p && !g.collinear(p, q)).collect();
            let mut far_triangles = 0;
            for (i, &a) in far.iter().enumerate() {
                for (j, &b) in far.iter().enumerate().skip(i + 1) {
                    for &c in &far[j + 1..] {
                        far_triangles += (g.collinear(a, b) && g.collinear(b, c) && g.collinear(a, c)) as usize;
                    }
                }
            }
            (through[p as usize - 1], far_triangles)
        })
        .collect();
    key.sort_unstable();
    key
}

#[derive(Clone)]
struct State {
    v: usize,
    degree: Vec<u8>,
    /// Bit `q` of `joined[p]` set when `p` and `q` share a line.
    joined: Vec<u32>,
    lines: Vec<[u8; 3]>,
}

impl State {
    fn new(v: usize) -> Self {
        State {
            v,
            degree: vec![0; v],
            joined: vec![0; v],
            lines: Vec::with_capacity(v),
        }
    }

    fn push(&mut self, line: [u8; 3]) {
        for &p in &line {
            self.degree[p as usize] += 1;
            for &q in &line {
                if p != q {
                    self.joined[p as usize] |= 1 << q;
                }
            }
        }
        self.lines.push(line);
    }

    fn pop(&mut self) {
        let line = self.lines.pop().unwrap();
        for &p in &line {
            self.degree[p as usize] -= 1;
            for &q in &line {
                if p != q {
                    self.joined[p as usize] &= !(1 << q);
                }
            }
        }
    }

    /// Admissible next lines, in increasing order.
    fn children(&self) -> Vec<[u8; 3]> {
        let Some(p) = (0..self.v).find(|&p| self.degree[p] < 3) else {
            return Vec::new();
        };
        let floor = self.lines.last().filter(|l| l[0] as usize == p).map(|l| (l[1], l[2]));
        let open = |q: usize| self.degree[q] < 3 && self.joined[p] >> q & 1 == 0;
        let mut out = Vec::new();
        for b in p + 1..self.v {
            if !open(b) {
                continue;
            }
            for c in b + 1..self.v {
                if !open(c) || self.joined[b] >> c & 1 == 1 {
                    continue;
                }
                if floor.is_some_and(|f| (b as u8, c as u8) <= f) {
                    continue;
                }
                out.push([p as u8, b as u8, c as u8]);
            }
        }
        out
    }

    /// Every deficient point still has enough unjoined deficient partners.
    fn feasible(&self) -> bool {
        (0..self.v).all(|p| {
            let need = 3 - self.degree[p] as usize;
            if need == 0 {
                return true;
            }
            let partners = (0..self.v)
                .filter(|&q| q != p && self.degree[q] < 3 && self.joined[p] >> q & 1 == 0)
                .count();
            partners >= 2 * need
        })
    }

    fn complete(&mut self, out: &mut Vec<Vec<[u8; 3]>>) {
        if self.lines.len() == self.v {
            out.push(self.lines.clone());
            return;
        }
        if !self.feasible() {
            return;
        }
        for line in self.children() {
            self.push(line);
            self.complete(out);
            self.pop();
        }
    }
}
