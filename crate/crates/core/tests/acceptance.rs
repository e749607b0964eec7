//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. A
//! criterion either passes, fails, or fails in a way recorded below as a known
//! deviation: a claimed value that exhaustive search shows to be wrong. The
//! binary exits non-zero on any other failure or when a time limit is missed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mono_triangles::catalog::{are_isomorphic, builtin, builtins, enumerate_v3};
use mono_triangles::cliques::{check_conjecture, max_mutually_intersecting, verify_six_line_bound, ConjectureStatus};
use mono_triangles::coloring::{
    count_monochromatic, min_monochromatic, optimal_color_balance, Color, SearchOptions,
};
use mono_triangles::connected_sum::{connected_sum, flags, SumSpec};
use mono_triangles::ramsey::{
    brute_force_min_mono, goodman_min, is_hamiltonian_cycle, lower_bound_construction, max_disjoint_mono,
    min_max_disjoint, triangle_free_colorings_k5,
};
use mono_triangles::triangles::{enumerate_triangles, line_triple_points, triangles_by_line_triples};
use mono_triangles::Configuration;

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails because the claimed value is contradicted by exact search.
    Known(String),
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn config(name: &str) -> Configuration {
    builtin(name).unwrap().configuration().unwrap()
}

fn min_mono(c: &Configuration) -> usize {
    min_monochromatic(c, &SearchOptions::default()).unwrap().min_total
}

fn fano_minimum() -> Outcome {
    let fano = config("fano");
    let min = min_mono(&fano);
    let balance = optimal_color_balance(&fano, &SearchOptions::default()).unwrap();
    // a blue pencil plus four red lines is optimal with no blue triangle at all
    let pencil: Vec<usize> = fano.lines_through(3).collect();
    let split = count_monochromatic(
        &fano,
        &mono_triangles::coloring::LineColoring::from_blue_lines(7, &pencil),
    )
    .unwrap();
    let detail = format!("min {min} (want 4), balance {balance} (claimed 1)");
    if min != 4 {
        Outcome::Fail(detail)
    } else if balance == 1 {
        Outcome::Pass(detail)
    } else if balance == 0 && split == (4, 0) {
        Outcome::Known(format!(
            "{detail}; blue pencil through point 3 (lines {pencil:?}) with the rest red is optimal: {} red + {} blue",
            split.0, split.1
        ))
    } else {
        Outcome::Fail(detail)
    }
}

fn named_zeros() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["mobius_kantor", "pappus", "desargues"] {
        let start = Instant::now();
        let min = min_mono(&config(name));
        ok &= min == 0 && start.elapsed() < SECOND;
        parts.push(format!("{name} {min} in {:?}", start.elapsed()));
    }
    check(ok, parts.join(", "))
}

fn section_examples() -> Outcome {
    let a = min_mono(&config("example_14_3"));
    let b = min_mono(&config("example_16_3"));
    check(a == 0 && b == 1, format!("example_14_3 {a} (want 0), example_16_3 {b} (want 1)"))
}

fn fano_sums() -> Outcome {
    let fano = config("fano");
    let fl = flags(&fano);
    let mut reference: Option<Configuration> = None;
    let mut sums = 0;
    for &(p1, l1) in &fl {
        for &(p2, l2) in &fl {
            let sum = connected_sum(&SumSpec {
                left: &fano,
                right: &fano,
                p1,
                l1,
                p2,
                l2,
            })
            .unwrap()
            .configuration;
            sums += 1;
            match &reference {
                None => {
                    let min = min_mono(&sum);
                    if min != 4 {
                        return Outcome::Fail(format!("flags ({p1},{l1}) ({p2},{l2}): min {min}"));
                    }
                    reference = Some(sum);
                }
                Some(r) => {
                    if !are_isomorphic(r, &sum) {
                        return Outcome::Fail(format!("flags ({p1},{l1}) ({p2},{l2}) not isomorphic"));
                    }
                }
            }
        }
    }
    // isomorphic sums share their minimum; spot-check a second one directly
    let other = connected_sum(&SumSpec {
        left: &fano,
        right: &fano,
        p1: fl[20].0,
        l1: fl[20].1,
        p2: fl[7].0,
        l2: fl[7].1,
    })
    .unwrap()
    .configuration;
    let min = min_mono(&other);
    check(min == 4, format!("{sums} flag pairs, all isomorphic, min 4 (spot check {min})"))
}

fn goodman_oracle() -> Outcome {
    let mut values = Vec::new();
    let mut ok = true;
    for n in 3..=7 {
        let brute = brute_force_min_mono(n).unwrap();
        ok &= brute as u64 == goodman_min(n as u64);
        values.push(brute);
    }
    ok &= values == [0, 0, 0, 2, 4];
    check(ok, format!("n = 3..7 brute force {values:?} = closed form"))
}

fn k5_classification() -> Outcome {
    let all = triangle_free_colorings_k5();
    let cycles = all
        .iter()
        .all(|c| is_hamiltonian_cycle(&c.color_class(Color::Red)) && is_hamiltonian_cycle(&c.color_class(Color::Blue)));
    check(
        all.len() == 12 && cycles,
        format!("{} triangle-free colorings, red and blue 5-cycles: {cycles}", all.len()),
    )
}

fn disjoint_minima() -> Outcome {
    let six = min_max_disjoint(6, None).unwrap().value;
    let seven = min_max_disjoint(7, None).unwrap().value;
    let k2 = max_disjoint_mono(&lower_bound_construction(2)).max_disjoint;
    let k3 = max_disjoint_mono(&lower_bound_construction(3)).max_disjoint;
    let start = Instant::now();
    let eight = min_max_disjoint(8, Some(30 * MINUTE)).unwrap().value;
    let slow = start.elapsed();
    check(
        (six, seven, k2, k3, eight) == (1, 1, 1, 2, 2),
        format!("K6 {six}, K7 {seven}, k=2 {k2}, k=3 {k3}; slow tier K8 {eight} in {slow:?}"),
    )
}

fn corpus() -> Vec<(String, mono_triangles::IncidenceGeometry)> {
    let mut out: Vec<_> = builtins().into_iter().map(|e| (e.name.to_string(), e.geometry)).collect();
    for v in 7..=10 {
        for (i, c) in enumerate_v3(v).unwrap().into_iter().enumerate() {
            out.push((format!("v{v}#{i}"), c.into_geometry()));
        }
    }
    out
}

fn six_line_bound() -> Outcome {
    let opts = SearchOptions::default();
    let mut cliques = 0;
    let mut minima = std::collections::BTreeSet::new();
    let mut packing_failures = Vec::new();
    for (name, g) in corpus() {
        let report = verify_six_line_bound(&g, &opts).unwrap();
        cliques += report.clique_minima.len();
        minima.extend(report.clique_minima.iter().map(|(_, m)| *m));
        if report.min_mono < 2 * report.six_clique_packing {
            packing_failures.push(format!("{name} ({} < 2*{})", report.min_mono, report.six_clique_packing));
        }
    }
    let detail = format!(
        "{cliques} six-line cliques, within-subset minima {minima:?} (claimed {{2}}); min >= 2k fails on {:?}",
        packing_failures
    );
    if minima.iter().all(|&m| m == 2) && packing_failures.is_empty() {
        Outcome::Pass(detail)
    } else if minima == [1].into() && packing_failures == ["six_mutual (1 < 2*1)"] {
        // six_mutual is not a v3 configuration; on the configurations themselves min >= 2k holds
        Outcome::Known(format!("{detail}; min >= 2k holds on every v3 configuration"))
    } else {
        Outcome::Fail(detail)
    }
}

fn clique_goldens() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, want) in [
        ("fano", 7),
        ("mobius_kantor", 4),
        ("pappus", 3),
        ("example_14_3", 5),
        ("example_16_3", 5),
    ] {
        let start = Instant::now();
        let (i, _) = max_mutually_intersecting(&builtin(name).unwrap().geometry);
        ok &= i == want && start.elapsed() < SECOND;
        parts.push(format!("{name} {i}"));
    }
    check(ok, parts.join(", "))
}

fn enumeration() -> Outcome {
    let counts: Vec<usize> = (7..=9).map(|v| enumerate_v3(v).unwrap().len()).collect();
    let fano = are_isomorphic(&enumerate_v3(7).unwrap()[0], &config("fano"));
    let pappus = enumerate_v3(9)
        .unwrap()
        .iter()
        .filter(|c| are_isomorphic(c, &config("pappus")))
        .count();
    let opts = SearchOptions::default();
    let mut found = Vec::new();
    for v in 7..=10 {
        for c in enumerate_v3(v).unwrap() {
            let r = check_conjecture(&c, &opts).unwrap();
            if r.status == ConjectureStatus::Counterexample {
                found.push(format!("{} (min {}, i {})", c.to_brace_string(), r.min_mono, r.max_clique));
            }
        }
    }
    let conjecture = if found.is_empty() {
        "no counterexample for v <= 10".to_string()
    } else {
        format!("counterexample found: {}", found.join("; "))
    };
    check(
        counts == [1, 1, 3] && fano && pappus == 1,
        format!("counts {counts:?}, Fano match {fano}, Pappus matches {pappus}; {conjecture}"),
    )
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    for entry in builtins() {
        let g = &entry.geometry;
        let tris = enumerate_triangles(g);
        let mut from_points: Vec<[usize; 3]> = tris.iter().map(|t| t.lines).collect();
        from_points.sort_unstable();
        if from_points != triangles_by_line_triples(g)
            || tris.iter().any(|t| line_triple_points(g, t.lines) != Some(t.points))
        {
            failures.push(format!("{} duality", entry.name));
        }
        let ex = min_monochromatic(g, &SearchOptions::default()).unwrap();
        let bb = min_monochromatic(g, &SearchOptions::branch_and_bound()).unwrap();
        if ex != bb {
            failures.push(format!("{} modes", entry.name));
        }
        let (r, b) = count_monochromatic(g, &ex.witness).unwrap();
        if r + b != ex.min_total {
            failures.push(format!("{} witness", entry.name));
        }
        if count_monochromatic(g, &ex.witness.swapped()).unwrap() != (b, r) {
            failures.push(format!("{} swap", entry.name));
        }
    }
    check(
        failures.is_empty(),
        format!("duality, swap invariance, witness recount, exhaustive = bnb on {} entries {failures:?}", builtins().len()),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "Fano minimum and balance", limit: SECOND, run: fano_minimum },
        Criterion { id: 2, title: "named zeros", limit: 3 * SECOND, run: named_zeros },
        Criterion { id: 3, title: "14_3 and 16_3 examples", limit: 10 * SECOND, run: section_examples },
        Criterion { id: 4, title: "Fano # Fano over all flags", limit: MINUTE, run: fano_sums },
        Criterion { id: 5, title: "Goodman oracle", limit: 2 * MINUTE, run: goodman_oracle },
        Criterion { id: 6, title: "K5 triangle-free classification", limit: SECOND, run: k5_classification },
        Criterion { id: 7, title: "disjoint minima", limit: 2 * MINUTE + 30 * MINUTE, run: disjoint_minima },
        Criterion { id: 8, title: "six-line bound", limit: MINUTE, run: six_line_bound },
        Criterion { id: 9, title: "clique goldens", limit: 5 * SECOND, run: clique_goldens },
        Criterion { id: 10, title: "enumeration and conjecture", limit: 5 * MINUTE, run: enumeration },
        Criterion { id: 11, title: "property suites", limit: MINUTE, run: property_suites },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timing = format!("{elapsed:.2?} / limit {:?}", c.limit);
        let late = elapsed > c.limit;
        match outcome {
            Outcome::Pass(d) if !late => println!("PASS criterion {}: {} — {d} [{timing}]", c.id, c.title),
            Outcome::Known(d) if !late => {
                println!("FAIL criterion {}: {} — {d} [known deviation] [{timing}]", c.id, c.title)
            }
            Outcome::Pass(d) | Outcome::Known(d) | Outcome::Fail(d) => {
                unexpected += 1;
                let why = if late { "time limit exceeded; " } else { "" };
                println!("FAIL criterion {}: {} — {why}{d} [{timing}]", c.id, c.title);
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
