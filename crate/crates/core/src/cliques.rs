//! Sets of mutually intersecting lines and the bounds they put on
//! monochromatic triangle counts.

use serde::Serialize;

use crate::coloring::{min_monochromatic, min_monochromatic_on_line_subset, SearchOptions};
use crate::error::Result;
use crate::graph::Graph;
use crate::incidence::{line_intersection_graph, IncidenceGeometry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    /// Size of a largest set of pairwise intersecting lines.
    pub max_clique: usize,
    /// Lexicographically first such set.
    pub witness: Vec<usize>,
    /// Largest number of pairwise line-disjoint 6-line cliques.
    pub six_clique_packing: usize,
    pub packing_witness: Vec<Vec<usize>>,
}

pub fn clique_report(geometry: &IncidenceGeometry) -> CliqueReport {
    let (max_clique, witness) = max_mutually_intersecting(geometry);
    let (six_clique_packing, packing_witness) = disjoint_six_clique_packing(geometry);
    CliqueReport {
        max_clique,
        witness,
        six_clique_packing,
        packing_witness,
    }
}

/// Exact maximum clique of the line intersection graph.
pub fn max_mutually_intersecting(geometry: &IncidenceGeometry) -> (usize, Vec<usize>) {
    let graph = line_intersection_graph(geometry);
    let mut best = Vec::new();
    let candidates: Vec<usize> = (0..graph.vertex_count()).collect();
    expand(&graph, &mut Vec::new(), &candidates, &mut best);
    (best.len(), best)
}

/// Candidates are visited in increasing order, so the first largest clique
/// recorded is the lexicographically least.
fn expand(graph: &Graph, clique: &mut Vec<usize>, candidates: &[usize], best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if clique.len() > best.len() {
            *best = clique.clone();
        }
        return;
    }
    if clique.len() + greedy_colors(graph, candidates) <= best.len() {
        return;
    }
    for (i, &v) in candidates.iter().enumerate() {
        if clique.len() + candidates.len() - i <= best.len() {
            return;
        }
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&u| graph.has_edge(u, v))
            .collect();
        clique.push(v);
        expand(graph, clique, &next, best);
        clique.pop();
    }
}

/// Colors used by a sequential greedy coloring; bounds the clique number from above.
fn greedy_colors(graph: &Graph, vertices: &[usize]) -> usize {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in vertices {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !graph.has_edge(u, v)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes.len()
}

/// Every set of `size` pairwise intersecting lines, in lexicographic order.
pub fn cliques_of_size(geometry: &IncidenceGeometry, size: usize) -> Vec<Vec<usize>> {
    fn walk(graph: &Graph, size: usize, clique: &mut Vec<usize>, candidates: &[usize], out: &mut Vec<Vec<usize>>) {
        if clique.len() == size {
            out.push(clique.clone());
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if clique.len() + candidates.len() - i < size {
                return;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| graph.has_edge(u, v))
                .collect();
            clique.push(v);
            walk(graph, size, clique, &next, out);
            clique.pop();
        }
    }
    let graph = line_intersection_graph(geometry);
    let mut out = Vec::new();
    let all: Vec<usize> = (0..graph.vertex_count()).collect();
    walk(&graph, size, &mut Vec::new(), &all, &mut out);
    out
}

/// Exact maximum packing of line-disjoint 6-cliques.
pub fn disjoint_six_clique_packing(geometry: &IncidenceGeometry) -> (usize, Vec<Vec<usize>>) {
    let cliques = cliques_of_size(geometry, 6);
    let mut used = vec![false; geometry.line_count()];
    let mut best = Vec::new();
    pack(&cliques, 0, &mut used, &mut Vec::new(), &mut best);
    let witness: Vec<Vec<usize>> = best.iter().map(|&i| cliques[i].clone()).collect();
    (witness.len(), witness)
}

fn pack(cliques: &[Vec<usize>], from: usize, used: &mut [bool], chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    let free_lines = used.iter().filter(|&&u| !u).count();
    if chosen.len() + (cliques.len() - from).min(free_lines / 6) <= best.len() {
        return;
    }
    for i in from..cliques.len() {
        if cliques[i].iter().any(|&l| used[l]) {
            continue;
        }
        for &l in &cliques[i] {
            used[l] = true;
        }
        chosen.push(i);
        pack(cliques, i + 1, used, chosen, best);
        chosen.pop();
        for &l in &cliques[i] {
            used[l] = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BoundViolation {
    /// A 6-clique whose lines can be colored with other than two monochromatic triangles.
    CliqueMinimum { clique: Vec<usize>, minimum: usize },
    /// Fewer monochromatic triangles than two per disjoint 6-clique.
    PackingBound { min_mono: usize, packing: usize },
    /// A 6-clique exists yet some coloring has no monochromatic triangle.
    ZeroMinimum { max_clique: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixLineCheck {
    pub min_mono: usize,
    pub max_clique: usize,
    pub six_clique_packing: usize,
    /// Each 6-clique with its own minimum under colorings of just its lines.
    pub clique_minima: Vec<(Vec<usize>, usize)>,
    pub violations: Vec<BoundViolation>,
}

impl SixLineCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every 6-line clique has within-clique minimum exactly 2, that
/// the overall minimum is at least twice the disjoint 6-clique packing, and
/// that a clique of six or more lines forces a nonzero minimum.
pub fn verify_six_line_bound(geometry: &IncidenceGeometry, options: &SearchOptions) -> Result<SixLineCheck> {
    let min_mono = min_monochromatic(geometry, options)?.min_total;
    let report = clique_report(geometry);
    let mut violations = Vec::new();
    let mut clique_minima = Vec::new();
    for clique in cliques_of_size(geometry, 6) {
        let minimum = min_monochromatic_on_line_subset(geometry, &clique, options)?;
        if minimum != 2 {
            violations.push(BoundViolation::CliqueMinimum {
                clique: clique.clone(),
                minimum,
            });
        }
        clique_minima.push((clique, minimum));
    }
    if min_mono < 2 * report.six_clique_packing {
        violations.push(BoundViolation::PackingBound {
            min_mono,
            packing: report.six_clique_packing,
        });
    }
    if report.max_clique >= 6 && min_mono == 0 {
        violations.push(BoundViolation::ZeroMinimum {
            max_clique: report.max_clique,
        });
    }
    Ok(SixLineCheck {
        min_mono,
        max_clique: report.max_clique,
        six_clique_packing: report.six_clique_packing,
        clique_minima,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjectureStatus {
    /// Nonzero minimum and more than four mutually intersecting lines.
    Holds,
    /// Minimum zero, so the implication says nothing.
    Vacuous,
    /// Nonzero minimum with at most four mutually intersecting lines.
    Counterexample,
}

impl ConjectureStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureStatus::Holds => "holds",
            ConjectureStatus::Vacuous => "vacuous",
            ConjectureStatus::Counterexample => "counterexample",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub status: ConjectureStatus,
    pub min_mono: usize,
    pub max_clique: usize,
}

/// Evaluates "nonzero minimum implies more than four mutually intersecting
/// lines". Reports, never asserts.
pub fn check_conjecture(geometry: &IncidenceGeometry, options: &SearchOptions) -> Result<ConjectureReport> {
    let min_mono = min_monochromatic(geometry, options)?.min_total;
    let (max_clique, _) = max_mutually_intersecting(geometry);
    let status = if min_mono == 0 {
        ConjectureStatus::Vacuous
    } else if max_clique > 4 {
        ConjectureStatus::Holds
    } else {
        ConjectureStatus::Counterexample
    };
    Ok(ConjectureReport {
        status,
        min_mono,
        max_clique,
    })
}
