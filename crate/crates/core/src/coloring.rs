//! Exact minimisation of monochromatic triangles over line 2-colorings.
//!
//! Each triangle is reduced to a bitmask of its three line indices. A coloring
//! is a bitmask with bit `i` set when line `i` is blue, so a triangle `t` is
//! red iff `mask & t == 0` and blue iff `mask & t == t`. Line 0 is always
//! fixed red: swapping both colors maps minima to minima.
//!
//! Two search modes return identical [`SearchResult`]s:
//!
//! * exhaustive: a Gray-code walk over the `2^(m-1)` colorings, split into
//!   contiguous chunks that run in parallel;
//! * branch-and-bound: depth-first over lines ordered by triangle participation,
//!   pruning a partial coloring once the triangles it has already decided
//!   monochromatic exceed the best total found so far.
//!
//! Ties between optimal colorings are broken towards the lexicographically
//! smallest color vector `(c0, c1, ...)` with red < blue.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Deadline, CHECK_INTERVAL};
use crate::error::{Error, Result};
use crate::incidence::IncidenceGeometry;
use crate::triangles::enumerate_triangles;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn swapped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// A red/blue assignment to the lines of a geometry, indexed by line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineColoring {
    blue: Vec<bool>,
}

impl LineColoring {
    pub fn uniform(len: usize, color: Color) -> Self {
        LineColoring {
            blue: vec![color == Color::Blue; len],
        }
    }

    pub fn from_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        LineColoring {
            blue: colors.into_iter().map(|c| c == Color::Blue).collect(),
        }
    }

    /// Bit `i` of `mask` set means line `i` is blue.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        LineColoring {
            blue: (0..len).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn from_blue_lines(len: usize, blue_lines: &[usize]) -> Self {
        let mut coloring = Self::uniform(len, Color::Red);
        for &i in blue_lines {
            coloring.blue[i] = true;
        }
        coloring
    }

    pub fn len(&self) -> usize {
        self.blue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blue.is_empty()
    }

    pub fn color(&self, line: usize) -> Color {
        if self.blue[line] {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn set(&mut self, line: usize, color: Color) {
        self.blue[line] = color == Color::Blue;
    }

    pub fn swapped(&self) -> Self {
        LineColoring {
            blue: self.blue.iter().map(|b| !b).collect(),
        }
    }

    pub fn red_lines(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.blue[i]).collect()
    }

    pub fn blue_lines(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.blue[i]).collect()
    }

    /// The coloring with line 0 red, swapping all colors if needed.
    pub fn normalized(&self) -> Self {
        if self.blue.first() == Some(&true) {
            self.swapped()
        } else {
            self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    #[serde(rename = "bnb")]
    BranchAndBound,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Exhaustive mode refuses geometries with more lines than this.
    pub exhaustive_limit: usize,
    /// No mode accepts more lines than this (at most 64).
    pub line_cap: usize,
    pub budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Exhaustive,
            exhaustive_limit: 26,
            line_cap: 40,
            budget: None,
        }
    }
}

impl SearchOptions {
    pub fn branch_and_bound() -> Self {
        SearchOptions {
            mode: SearchMode::BranchAndBound,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub min_total: usize,
    /// Lexicographically smallest optimal coloring with line 0 red.
    pub witness: LineColoring,
    pub witness_red_count: usize,
    pub witness_blue_count: usize,
    /// Optimal colorings counted up to swapping both colors.
    pub optimal_coloring_count: u64,
}

/// JSON shape emitted by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinMonoReport {
    pub min_mono: usize,
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
    pub red_triangles: usize,
    pub blue_triangles: usize,
    pub optimal_colorings: u64,
}

impl SearchResult {
    pub fn report(&self) -> MinMonoReport {
        MinMonoReport {
            min_mono: self.min_total,
            red: self.witness.red_lines(),
            blue: self.witness.blue_lines(),
            red_triangles: self.witness_red_count,
            blue_triangles: self.witness_blue_count,
            optimal_colorings: self.optimal_coloring_count,
        }
    }
}

/// Numbers of all-red and all-blue triangles under `coloring`.
pub fn count_monochromatic(
    geometry: &IncidenceGeometry,
    coloring: &LineColoring,
) -> Result<(usize, usize)> {
    if coloring.len() != geometry.line_count() {
        return Err(Error::ColoringLength {
            expected: geometry.line_count(),
            found: coloring.len(),
        });
    }
    let mut counts = (0, 0);
    for t in enumerate_triangles(geometry) {
        let colors = t.lines.map(|l| coloring.color(l));
        if colors.iter().all(|&c| c == Color::Red) {
            counts.0 += 1;
        } else if colors.iter().all(|&c| c == Color::Blue) {
            counts.1 += 1;
        }
    }
    Ok(counts)
}

pub fn min_monochromatic(
    geometry: &IncidenceGeometry,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let problem = Problem::from_geometry(geometry);
    let summary = problem.solve(options)?;
    Ok(summary.into_result(problem.line_count))
}

/// Over all optimal colorings, the smallest achievable `min(red, blue)`.
pub fn optimal_color_balance(geometry: &IncidenceGeometry, options: &SearchOptions) -> Result<usize> {
    Ok(Problem::from_geometry(geometry).solve(options)?.balance)
}

/// Minimum number of monochromatic triangles whose three lines all lie in
/// `subset`, over all colorings of those lines.
pub fn min_monochromatic_on_line_subset(
    geometry: &IncidenceGeometry,
    subset: &[usize],
    options: &SearchOptions,
) -> Result<usize> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let m = geometry.line_count();
    if let Some(&index) = subset.iter().find(|&&i| i >= m) {
        return Err(Error::LineIndex {
            index,
            line_count: m,
        });
    }
    let mut lines = subset.to_vec();
    lines.sort_unstable();
    lines.dedup();
    let mut local = vec![usize::MAX; m];
    for (k, &l) in lines.iter().enumerate() {
        local[l] = k;
    }
    let triangles = enumerate_triangles(geometry)
        .into_iter()
        .filter(|t| t.lines.iter().all(|&l| local[l] != usize::MAX))
        .map(|t| t.lines.map(|l| local[l]))
        .collect::<Vec<_>>();
    let problem = Problem::new(lines.len(), &triangles);
    Ok(problem.solve(options)?.min_total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Summary {
    min_total: usize,
    witness: u64,
    red: usize,
    blue: usize,
    optimal_count: u64,
    balance: usize,
}

impl Summary {
    fn leaf(mask: u64, red: usize, blue: usize) -> Self {
        Summary {
            min_total: red + blue,
            witness: mask,
            red,
            blue,
            optimal_count: 1,
            balance: red.min(blue),
        }
    }

    fn into_result(self, line_count: usize) -> SearchResult {
        SearchResult {
            min_total: self.min_total,
            witness: LineColoring::from_mask(self.witness, line_count),
            witness_red_count: self.red,
            witness_blue_count: self.blue,
            optimal_coloring_count: self.optimal_count,
        }
    }
}

/// Associative, commutative merge: the result is independent of how the
/// coloring space was partitioned.
fn merge(a: Option<Summary>, b: Option<Summary>, line_count: usize) -> Option<Summary> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if a.min_total != b.min_total {
            if a.min_total < b.min_total {
                a
            } else {
                b
            }
        } else {
            let first = if lex_key(a.witness, line_count) <= lex_key(b.witness, line_count) {
                a
            } else {
                b
            };
            Summary {
                optimal_count: a.optimal_count + b.optimal_count,
                balance: a.balance.min(b.balance),
                ..first
            }
        }),
    }
}

/// Orders masks like the color vectors `(c0, c1, ...)` they encode.
fn lex_key(mask: u64, line_count: usize) -> u64 {
    mask.reverse_bits() >> (64 - line_count)
}

struct Problem {
    line_count: usize,
    triangles: Vec<u64>,
}

impl Problem {
    fn from_geometry(geometry: &IncidenceGeometry) -> Self {
        let lines: Vec<[usize; 3]> = enumerate_triangles(geometry).iter().map(|t| t.lines).collect();
        Problem::new(geometry.line_count(), &lines)
    }

    fn new(line_count: usize, triangles: &[[usize; 3]]) -> Self {
        let triangles = if line_count <= 64 {
            triangles
                .iter()
                .map(|t| t.iter().fold(0u64, |m, &l| m | 1 << l))
                .collect()
        } else {
            Vec::new()
        };
        Problem {
            line_count,
            triangles,
        }
    }

    fn solve(&self, options: &SearchOptions) -> Result<Summary> {
        let cap = options.line_cap.min(64);
        if self.line_count > cap {
            return Err(Error::LineCap {
                lines: self.line_count,
                cap,
            });
        }
        let summary = match options.mode {
            SearchMode::Exhaustive => {
                if self.line_count > options.exhaustive_limit {
                    return Err(Error::ExhaustiveLimit {
                        lines: self.line_count,
                        limit: options.exhaustive_limit,
                    });
                }
                self.exhaustive(&Deadline::new(options.budget))
            }
            SearchMode::BranchAndBound => self.branch_and_bound(&Deadline::new(options.budget)),
        };
        summary.ok_or(Error::BudgetExhausted)
    }

    fn exhaustive(&self, deadline: &Deadline) -> Option<Summary> {
        let free = self.line_count - 1;
        let split = free.min(8);
        let chunk_len = 1u64 << (free - split);
        let per_line = self.triangles_per_line();
        let summary = (0..1u64 << split)
            .into_par_iter()
            .map(|chunk| self.gray_walk(chunk * chunk_len, chunk_len, &per_line, deadline))
            .reduce(|| None, |a, b| merge(a, b, self.line_count));
        if deadline.is_expired() {
            None
        } else {
            summary
        }
    }

    fn triangles_per_line(&self) -> Vec<Vec<usize>> {
        let mut per_line = vec![Vec::new(); self.line_count];
        for (i, &t) in self.triangles.iter().enumerate() {
            let mut bits = t;
            while bits != 0 {
                per_line[bits.trailing_zeros() as usize].push(i);
                bits &= bits - 1;
            }
        }
        per_line
    }

    /// Visits the Gray codes of `start..start + len`; code bit `j` is line `j + 1`.
    fn gray_walk(
        &self,
        start: u64,
        len: u64,
        per_line: &[Vec<usize>],
        deadline: &Deadline,
    ) -> Option<Summary> {
        if deadline.check() {
            return None;
        }
        let mut mask = (start ^ (start >> 1)) << 1;
        let mut blue_lines: Vec<u8> = self
            .triangles
            .iter()
            .map(|&t| (mask & t).count_ones() as u8)
            .collect();
        let mut red = blue_lines.iter().filter(|&&c| c == 0).count();
        let mut blue = blue_lines.iter().filter(|&&c| c == 3).count();
        let mut best = Summary::leaf(mask, red, blue);
        for step in 1..len {
            if step.is_multiple_of(CHECK_INTERVAL) && deadline.check() {
                return None;
            }
            let line = ((start + step).trailing_zeros() + 1) as usize;
            mask ^= 1 << line;
            if mask >> line & 1 == 1 {
                for &t in &per_line[line] {
                    let c = &mut blue_lines[t];
                    red -= (*c == 0) as usize;
                    *c += 1;
                    blue += (*c == 3) as usize;
                }
            } else {
                for &t in &per_line[line] {
                    let c = &mut blue_lines[t];
                    blue -= (*c == 3) as usize;
                    *c -= 1;
                    red += (*c == 0) as usize;
                }
            }
            let total = red + blue;
            if total < best.min_total {
                best = Summary::leaf(mask, red, blue);
            } else if total == best.min_total {
                best.optimal_count += 1;
                best.balance = best.balance.min(red.min(blue));
                if lex_key(mask, self.line_count) < lex_key(best.witness, self.line_count) {
                    best.witness = mask;
                    best.red = red;
                    best.blue = blue;
                }
            }
        }
        Some(best)
    }

    fn branch_and_bound(&self, deadline: &Deadline) -> Option<Summary> {
        let m = self.line_count;
        let mut participation = vec![0usize; m];
        for &t in &self.triangles {
            for (l, p) in participation.iter_mut().enumerate() {
                *p += (t >> l & 1) as usize;
            }
        }
        let mut order: Vec<usize> = (1..m).collect();
        order.sort_by_key(|&l| (std::cmp::Reverse(participation[l]), l));
        order.insert(0, 0);
        let mut position = vec![0; m];
        for (d, &l) in order.iter().enumerate() {
            position[l] = d;
        }
        let mut completes = vec![Vec::new(); m];
        for &t in &self.triangles {
            let last = (0..m).filter(|&l| t >> l & 1 == 1).map(|l| position[l]).max().unwrap();
            completes[last].push(t);
        }
        let search = BranchAndBound {
            line_count: m,
            order,
            completes,
            incumbent: AtomicUsize::new(usize::MAX),
            deadline,
        };

        // Split on the first few free lines so subtrees run in parallel.
        let depth = m.min(11);
        let mut prefixes = Vec::new();
        search.prefixes(0, 0, 0, 0, depth, &mut prefixes);
        let summary = prefixes
            .into_par_iter()
            .map(|(mask, red, blue)| {
                if deadline.check() {
                    return None;
                }
                let mut best = None;
                let mut nodes = 0;
                search.descend(depth, mask, red, blue, &mut best, &mut nodes);
                best
            })
            .reduce(|| None, |a, b| merge(a, b, m));
        if deadline.is_expired() {
            None
        } else {
            summary
        }
    }
}

struct BranchAndBound<'a> {
    line_count: usize,
    order: Vec<usize>,
    /// Triangles whose last line in `order` is at each depth.
    completes: Vec<Vec<u64>>,
    incumbent: AtomicUsize,
    deadline: &'a Deadline,
}

impl BranchAndBound<'_> {
    fn choices(&self, depth: usize) -> &'static [bool] {
        if depth == 0 {
            &[false]
        } else {
            &[false, true]
        }
    }

    fn assign(&self, depth: usize, mask: u64, red: usize, blue: usize) -> (usize, usize) {
        self.completes[depth].iter().fold((red, blue), |(r, b), &t| {
            let hit = mask & t;
            (r + (hit == 0) as usize, b + (hit == t) as usize)
        })
    }

    fn prefixes(
        &self,
        depth: usize,
        mask: u64,
        red: usize,
        blue: usize,
        target: usize,
        out: &mut Vec<(u64, usize, usize)>,
    ) {
        if depth == target {
            out.push((mask, red, blue));
            return;
        }
        for &is_blue in self.choices(depth) {
            let mask = mask | (is_blue as u64) << self.order[depth];
            let (r, b) = self.assign(depth, mask, red, blue);
            self.prefixes(depth + 1, mask, r, b, target, out);
        }
    }

    fn descend(
        &self,
        depth: usize,
        mask: u64,
        red: usize,
        blue: usize,
        best: &mut Option<Summary>,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        if nodes.is_multiple_of(CHECK_INTERVAL) && self.deadline.check() {
            return;
        }
        if self.deadline.is_expired() || red + blue > self.incumbent.load(Ordering::Relaxed) {
            return;
        }
        if depth == self.line_count {
            self.incumbent.fetch_min(red + blue, Ordering::Relaxed);
            *best = merge(*best, Some(Summary::leaf(mask, red, blue)), self.line_count);
            return;
        }
        for &is_blue in self.choices(depth) {
            let mask = mask | (is_blue as u64) << self.order[depth];
            let (r, b) = self.assign(depth, mask, red, blue);
            self.descend(depth + 1, mask, r, b, best, nodes);
        }
    }
}
