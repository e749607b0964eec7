//! Monochromatic triangles in red/blue edge colorings of complete graphs.
//!
//! Vertices of `K_n` are `0..n`. Edges `(i, j)` with `i < j` are indexed in
//! lexicographic order, so `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
//!
//! Only the triangle case of the Ramsey-type quantities is handled here: the
//! least `n` forcing `k` (vertex-disjoint or not) monochromatic triangles is
//! read off from [`goodman_min`] and [`min_max_disjoint`].

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Deadline, CHECK_INTERVAL};
use crate::coloring::Color;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic index of edge `(i, j)`, `i < j < n`.
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    blue: Vec<bool>,
}

impl EdgeColoring {
    pub fn uniform(n: usize, color: Color) -> Self {
        EdgeColoring {
            n,
            blue: vec![color == Color::Blue; edge_count(n)],
        }
    }

    pub fn from_fn(n: usize, mut color: impl FnMut(usize, usize) -> Color) -> Self {
        let mut blue = Vec::with_capacity(edge_count(n));
        for i in 0..n {
            for j in i + 1..n {
                blue.push(color(i, j) == Color::Blue);
            }
        }
        EdgeColoring { n, blue }
    }

    /// Bit `e` of `mask` set means edge `e` is blue.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(edge_count(n) <= 64);
        EdgeColoring {
            n,
            blue: (0..edge_count(n)).map(|e| mask >> e & 1 == 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, i: usize, j: usize) -> Color {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if self.blue[edge_index(self.n, i, j)] {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn edges_of(&self, color: Color) -> Vec<usize> {
        (0..self.blue.len())
            .filter(|&e| self.blue[e] == (color == Color::Blue))
            .collect()
    }

    /// The graph formed by the edges of one color.
    pub fn color_class(&self, color: Color) -> Graph {
        let mut graph = Graph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.color(i, j) == color {
                    graph.add_edge(i, j);
                }
            }
        }
        graph
    }

    pub fn is_monochromatic(&self, [a, b, c]: [usize; 3]) -> bool {
        let x = self.color(a, b);
        x == self.color(b, c) && x == self.color(a, c)
    }

    pub fn swapped(&self) -> Self {
        EdgeColoring {
            n: self.n,
            blue: self.blue.iter().map(|b| !b).collect(),
        }
    }
}

impl Serialize for EdgeColoring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            red: Vec<usize>,
            blue: Vec<usize>,
        }
        Repr {
            n: self.n,
            red: self.edges_of(Color::Red),
            blue: self.edges_of(Color::Blue),
        }
        .serialize(serializer)
    }
}

/// Goodman's minimum number of monochromatic triangles over all 2-colorings of `K_n`:
/// `C(n,3) - floor(n/2 * floor((n-1)^2 / 4))`, with the outer product evaluated
/// as `floor(n * floor((n-1)^2 / 4) / 2)`.
pub fn goodman_min(n: u64) -> u64 {
    let choose3 = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    let inner = n.saturating_sub(1).pow(2) / 4;
    choose3 - n * inner / 2
}

/// `(red, blue)` monochromatic triangle counts over all vertex triples.
pub fn count_mono_triangles(coloring: &EdgeColoring) -> (usize, usize) {
    let n = coloring.n;
    let mut counts = (0, 0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if coloring.is_monochromatic([a, b, c]) {
                    match coloring.color(a, b) {
                        Color::Red => counts.0 += 1,
                        Color::Blue => counts.1 += 1,
                    }
                }
            }
        }
    }
    counts
}

/// Vertex triples of `K_n` with their edge masks.
fn triangle_edge_masks(n: usize) -> Vec<([usize; 3], u64)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mask = 1 << edge_index(n, a, b) | 1 << edge_index(n, a, c) | 1 << edge_index(n, b, c);
                out.push(([a, b, c], mask));
            }
        }
    }
    out
}

fn vertex_mask([a, b, c]: [usize; 3]) -> u64 {
    1 << a | 1 << b | 1 << c
}

pub const BRUTE_FORCE_MAX_N: usize = 7;

/// Minimum total monochromatic triangles by enumerating every coloring with edge 0 red.
pub fn brute_force_min_mono(n: usize) -> Result<usize> {
    if !(1..=BRUTE_FORCE_MAX_N).contains(&n) {
        return Err(Error::VertexRange {
            n,
            min: 1,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let e = edge_count(n);
    if e == 0 {
        return Ok(0);
    }
    let triangles: Vec<u64> = triangle_edge_masks(n).into_iter().map(|(_, m)| m).collect();
    let free = e - 1;
    let split = free.min(8);
    let chunk = 1u64 << (free - split);
    Ok((0..1u64 << split)
        .into_par_iter()
        .map(|c| {
            (c * chunk..(c + 1) * chunk)
                .map(|x| {
                    let mask = x << 1;
                    triangles
                        .iter()
                        .filter(|&&t| mask & t == 0 || mask & t == t)
                        .count()
                })
                .min()
                .unwrap()
        })
        .min()
        .unwrap())
}

/// Every coloring of `K_5` without a monochromatic triangle, in mask order.
pub fn triangle_free_colorings_k5() -> Vec<EdgeColoring> {
    let triangles: Vec<u64> = triangle_edge_masks(5).into_iter().map(|(_, m)| m).collect();
    (0..1u64 << edge_count(5))
        .filter(|&mask| triangles.iter().all(|&t| mask & t != 0 && mask & t != t))
        .map(|mask| EdgeColoring::from_mask(5, mask))
        .collect()
}

/// True when `graph` is a single cycle through all of its vertices.
pub fn is_hamiltonian_cycle(graph: &Graph) -> bool {
    let n = graph.vertex_count();
    if n < 3 || (0..n).any(|v| graph.degree(v) != 2) {
        return false;
    }
    let (mut prev, mut cur, mut len) = (usize::MAX, 0, 0);
    loop {
        let next = graph.neighbors(cur).find(|&v| v != prev).unwrap();
        prev = cur;
        cur = next;
        len += 1;
        if cur == 0 {
            return len == n;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingResult {
    pub max_disjoint: usize,
    /// Sorted vertex triples, pairwise vertex-disjoint.
    pub witness_triangles: Vec<[usize; 3]>,
}

/// Exact maximum set of vertex-disjoint monochromatic triangles.
pub fn max_disjoint_mono(coloring: &EdgeColoring) -> PackingResult {
    let n = coloring.n;
    assert!(n <= 64, "packing supports at most 64 vertices");
    // Monochromatic triangles grouped by their smallest vertex.
    let mut by_low: Vec<Vec<u64>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if coloring.is_monochromatic([a, b, c]) {
                    by_low[a].push(vertex_mask([a, b, c]));
                }
            }
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    let max_disjoint = pack_memo(full, &by_low, &mut memo);

    let mut witness = Vec::new();
    let mut remaining = full;
    while witness.len() < max_disjoint {
        let target = pack_memo(remaining, &by_low, &mut memo);
        let v = remaining.trailing_zeros() as usize;
        let choice = by_low[v]
            .iter()
            .copied()
            .find(|&t| t & remaining == t && 1 + pack_memo(remaining & !t, &by_low, &mut memo) == target);
        match choice {
            Some(t) => {
                let mut tri = [0; 3];
                let mut bits = t;
                for slot in &mut tri {
                    *slot = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                }
                witness.push(tri);
                remaining &= !t;
            }
            None => remaining &= !(1 << v),
        }
    }
    PackingResult {
        max_disjoint,
        witness_triangles: witness,
    }
}

fn pack_memo(remaining: u64, by_low: &[Vec<u64>], memo: &mut HashMap<u64, usize>) -> usize {
    if remaining.count_ones() < 3 {
        return 0;
    }
    if let Some(&v) = memo.get(&remaining) {
        return v;
    }
    let v = remaining.trailing_zeros() as usize;
    let mut best = pack_memo(remaining & !(1 << v), by_low, memo);
    for &t in &by_low[v] {
        if t & remaining == t {
            best = best.max(1 + pack_memo(remaining & !t, by_low, memo));
        }
    }
    memo.insert(remaining, best);
    best
}

/// Largest number of pairwise disjoint masks in `sets`, stopping early at `limit`.
fn pack_small(sets: &[u64], used: u64, limit: usize) -> usize {
    if limit == 0 {
        return 0;
    }
    let mut best = 0;
    for (i, &s) in sets.iter().enumerate() {
        if s & used == 0 {
            best = best.max(1 + pack_small(&sets[i + 1..], used | s, limit - 1));
            if best >= limit {
                break;
            }
        }
    }
    best
}

/// `floor((n - 2) / 3)`, the guaranteed number of disjoint monochromatic
/// triangles, for `n >= 6`. Below 6 the formula does not apply (`K_5` has a
/// triangle-free coloring), so `None` is returned.
pub fn disjoint_minimum_formula(n: usize) -> Option<usize> {
    (n >= 6).then(|| (n - 2) / 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointMinimum {
    pub n: usize,
    /// Minimum over colorings of the maximum disjoint monochromatic packing.
    pub value: usize,
    /// A coloring attaining `value`, edge 0 red.
    pub witness: EdgeColoring,
}

pub const EXHAUSTIVE_DISJOINT_MAX_N: usize = 7;
pub const BNB_DISJOINT_MAX_N: usize = 8;

/// Exhaustive for `n <= 7`; branch-and-bound for `n = 8`.
pub fn min_max_disjoint(n: usize, budget: Option<Duration>) -> Result<DisjointMinimum> {
    if n <= EXHAUSTIVE_DISJOINT_MAX_N {
        min_max_disjoint_exhaustive(n)
    } else {
        min_max_disjoint_bnb(n, budget)
    }
}

pub fn min_max_disjoint_exhaustive(n: usize) -> Result<DisjointMinimum> {
    if !(1..=EXHAUSTIVE_DISJOINT_MAX_N).contains(&n) {
        return Err(Error::VertexRange {
            n,
            min: 1,
            max: EXHAUSTIVE_DISJOINT_MAX_N,
        });
    }
    let e = edge_count(n);
    let triangles = triangle_edge_masks(n);
    let free = e.saturating_sub(1);
    let split = free.min(8);
    let chunk = 1u64 << (free - split);
    let ceiling = n / 3;
    let (value, mask) = (0..1u64 << split)
        .into_par_iter()
        .map(|c| {
            let mut best = (ceiling, (c * chunk) << 1);
            let mut mono = Vec::with_capacity(triangles.len());
            for x in c * chunk..(c + 1) * chunk {
                let mask = x << 1;
                mono.clear();
                mono.extend(
                    triangles
                        .iter()
                        .filter(|(_, t)| mask & t == 0 || mask & t == *t)
                        .map(|&(v, _)| vertex_mask(v)),
                );
                let packing = pack_small(&mono, 0, best.0);
                if packing < best.0 {
                    best = (packing, mask);
                }
            }
            best
        })
        .min()
        .unwrap();
    Ok(DisjointMinimum {
        n,
        value,
        witness: EdgeColoring::from_mask(n, mask),
    })
}

/// Depth-first search over edge colorings of `K_n` (`n <= 8`) in colex edge
/// order, so every triangle is decided as soon as its last edge is. A partial
/// coloring is abandoned once its decided monochromatic triangles already pack
/// as many disjoint copies as the best complete coloring found.
pub fn min_max_disjoint_bnb(n: usize, budget: Option<Duration>) -> Result<DisjointMinimum> {
    if !(3..=BNB_DISJOINT_MAX_N).contains(&n) {
        return Err(Error::VertexRange {
            n,
            min: 3,
            max: BNB_DISJOINT_MAX_N,
        });
    }
    let search = DisjointSearch::new(n);
    let deadline = Deadline::new(budget);
    let incumbent = AtomicUsize::new(n / 3 + 1);

    let depth = search.order.len().min(10);
    let mut prefixes = Vec::new();
    search.prefixes(0, 0, &mut Vec::new(), depth, &mut prefixes);
    prefixes.into_par_iter().for_each(|(mask, mono)| {
        if deadline.check() {
            return;
        }
        let mut mono = mono;
        let mut nodes = 0;
        search.minimise(depth, mask, &mut mono, &incumbent, &deadline, &mut nodes);
    });
    if deadline.is_expired() {
        return Err(Error::BudgetExhausted);
    }
    let value = incumbent.load(Ordering::Relaxed);
    let mask = search
        .first_with(0, 0, &mut Vec::new(), value)
        .expect("the optimum was attained by some coloring");
    Ok(DisjointMinimum {
        n,
        value,
        witness: EdgeColoring::from_mask(n, mask),
    })
}

struct DisjointSearch {
    /// Edge indices in colex order `(0,1), (0,2), (1,2), (0,3), ...`.
    order: Vec<usize>,
    /// For each depth, the triangles completed by that edge: (edge mask, vertex mask).
    completes: Vec<Vec<(u64, u64)>>,
}

impl DisjointSearch {
    fn new(n: usize) -> Self {
        let mut order = Vec::new();
        let mut completes = Vec::new();
        for j in 1..n {
            for b in 0..j {
                order.push(edge_index(n, b, j));
                completes.push(
                    (0..b)
                        .map(|a| {
                            let edges = 1 << edge_index(n, a, b) | 1 << edge_index(n, a, j) | 1 << edge_index(n, b, j);
                            (edges, vertex_mask([a, b, j]))
                        })
                        .collect(),
                );
            }
        }
        DisjointSearch { order, completes }
    }

    fn choices(depth: usize) -> &'static [bool] {
        if depth == 0 {
            &[false]
        } else {
            &[false, true]
        }
    }

    /// Applies the edge at `depth` and pushes newly monochromatic triangles.
    fn extend(&self, depth: usize, mask: u64, mono: &mut Vec<u64>) {
        for &(edges, vertices) in &self.completes[depth] {
            let hit = mask & edges;
            if hit == 0 || hit == edges {
                mono.push(vertices);
            }
        }
    }

    fn prefixes(&self, depth: usize, mask: u64, mono: &mut Vec<u64>, target: usize, out: &mut Vec<(u64, Vec<u64>)>) {
        if depth == target {
            out.push((mask, mono.clone()));
            return;
        }
        for &blue in Self::choices(depth) {
            let mask = mask | (blue as u64) << self.order[depth];
            let len = mono.len();
            self.extend(depth, mask, mono);
            self.prefixes(depth + 1, mask, mono, target, out);
            mono.truncate(len);
        }
    }

    fn minimise(
        &self,
        depth: usize,
        mask: u64,
        mono: &mut Vec<u64>,
        incumbent: &AtomicUsize,
        deadline: &Deadline,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        if (nodes.is_multiple_of(CHECK_INTERVAL) && deadline.check()) || deadline.is_expired() {
            return;
        }
        let best = incumbent.load(Ordering::Relaxed);
        let packed = pack_small(mono, 0, best);
        if packed >= best {
            return;
        }
        if depth == self.order.len() {
            incumbent.fetch_min(packed, Ordering::Relaxed);
            return;
        }
        for &blue in Self::choices(depth) {
            let mask = mask | (blue as u64) << self.order[depth];
            let len = mono.len();
            self.extend(depth, mask, mono);
            self.minimise(depth + 1, mask, mono, incumbent, deadline, nodes);
            mono.truncate(len);
        }
    }

    /// First complete coloring in search order whose packing equals `value`.
    fn first_with(&self, depth: usize, mask: u64, mono: &mut Vec<u64>, value: usize) -> Option<u64> {
        let packed = pack_small(mono, 0, value + 1);
        if packed > value {
            return None;
        }
        if depth == self.order.len() {
            return (packed == value).then_some(mask);
        }
        for &blue in Self::choices(depth) {
            let mask = mask | (blue as u64) << self.order[depth];
            let len = mono.len();
            self.extend(depth, mask, mono);
            let found = self.first_with(depth + 1, mask, mono, value);
            mono.truncate(len);
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Two-class coloring of `K_{3k+1}`: classes of sizes `3k - 1` and `2`, edges
/// across classes red, edges inside a class blue. The red graph is bipartite,
/// and blue triangles live inside the larger class, so at most `k - 1` of them
/// are disjoint.
///
/// # Panics
///
/// If `k < 2`.
pub fn lower_bound_construction(k: usize) -> EdgeColoring {
    assert!(k >= 2, "construction needs k >= 2, got {k}");
    let n = 3 * k + 1;
    let large = 3 * k - 1;
    EdgeColoring::from_fn(n, |i, j| {
        if (i < large) == (j < large) {
            Color::Blue
        } else {
            Color::Red
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_indexing_is_lexicographic() {
        let n = 5;
        let mut expected = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(edge_index(n, i, j), expected);
                expected += 1;
            }
        }
        assert_eq!(expected, edge_count(n));
    }

    #[test]
    fn goodman_small_values() {
        let values: Vec<u64> = (1..=7).map(goodman_min).collect();
        assert_eq!(values, vec![0, 0, 0, 0, 0, 2, 4]);
        assert_eq!(goodman_min(0), 0);
    }

    #[test]
    fn uniform_counts() {
        assert_eq!(count_mono_triangles(&EdgeColoring::uniform(3, Color::Red)), (1, 0));
        assert_eq!(count_mono_triangles(&EdgeColoring::uniform(6, Color::Red)), (20, 0));
        assert_eq!(count_mono_triangles(&EdgeColoring::uniform(6, Color::Blue)), (0, 20));
    }

    #[test]
    fn pentagon_and_pentagram() {
        // red cycle 0-1-2-3-4-0, blue the complementary 5-cycle
        let c = EdgeColoring::from_fn(5, |i, j| {
            if (j - i) % 5 == 1 || (j - i) % 5 == 4 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert_eq!(count_mono_triangles(&c), (0, 0));
        assert!(is_hamiltonian_cycle(&c.color_class(Color::Red)));
        assert!(is_hamiltonian_cycle(&c.color_class(Color::Blue)));
        assert!(triangle_free_colorings_k5().contains(&c));
        assert_eq!(max_disjoint_mono(&c).max_disjoint, 0);
    }

    #[test]
    fn brute_force_range() {
        assert!(matches!(brute_force_min_mono(8), Err(Error::VertexRange { .. })));
        assert_eq!(brute_force_min_mono(1).unwrap(), 0);
        assert_eq!(brute_force_min_mono(3).unwrap(), 0);
    }

    #[test]
    fn packing_all_red() {
        let p = max_disjoint_mono(&EdgeColoring::uniform(6, Color::Red));
        assert_eq!(p.max_disjoint, 2);
        assert_eq!(p.witness_triangles.len(), 2);
        let used: u64 = p.witness_triangles.iter().map(|&t| vertex_mask(t)).fold(0, |a, m| {
            assert_eq!(a & m, 0);
            a | m
        });
        assert_eq!(used.count_ones(), 6);
    }

    #[test]
    fn construction_shape() {
        let c = lower_bound_construction(2);
        assert_eq!(c.n(), 7);
        assert_eq!(count_mono_triangles(&c).0, 0);
        assert_eq!(max_disjoint_mono(&c).max_disjoint, 1);
    }

    #[test]
    fn formula_domain() {
        assert_eq!(disjoint_minimum_formula(5), None);
        assert_eq!(disjoint_minimum_formula(6), Some(1));
        assert_eq!(disjoint_minimum_formula(8), Some(2));
    }

    #[test]
    fn bnb_agrees_with_exhaustive_below_eight() {
        for n in 3..=7 {
            let a = min_max_disjoint_exhaustive(n).unwrap();
            let b = min_max_disjoint_bnb(n, None).unwrap();
            assert_eq!(a.value, b.value, "n = {n}");
            assert_eq!(max_disjoint_mono(&b.witness).max_disjoint, b.value);
            assert_eq!(max_disjoint_mono(&a.witness).max_disjoint, a.value);
        }
    }
}
