//! Named configurations, isomorphism testing and enumeration of small
//! symmetric `v_3` configurations.

mod enumerate;
mod isomorphism;

pub use enumerate::{enumerate_v3, ENUMERATION_RANGE};
pub use isomorphism::{are_isomorphic, isomorphism};

use crate::connected_sum::{connected_sum, SumSpec};
use crate::error::{Error, Result};
use crate::incidence::{Configuration, IncidenceGeometry, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub geometry: IncidenceGeometry,
    pub provenance: &'static str,
}

impl CatalogEntry {
    pub fn configuration(&self) -> Result<Configuration> {
        Configuration::try_from(self.geometry.clone()).map_err(Error::NotConfiguration)
    }
}

pub const BUILTIN_NAMES: [&str; 8] = [
    "fano",
    "mobius_kantor",
    "pappus",
    "desargues",
    "example_14_3",
    "example_16_3",
    "six_mutual",
    "fano_pair",
];

const EXAMPLE_14_3: &str = "{{1,2,3},{3,4,5},{1,5,6},{3,6,7},{2,5,7},{1,8,9},{6,9,10},{2,11,13},{7,12,13},{4,8,10},
{4,11,12},{9,13,14},{8,11,14},{10,12,14}}";

// Line 7 is {2,10,15}; with {1,10,15} there instead, point 1 would lie on
// four lines and point 2 on two.
const EXAMPLE_16_3: &str = "{{1,2,3},{1,4,5},{3,5,6},{1,6,7},{3,4,7},{4,6,8},{2,10,15},{2,13,14},{5,9,11},{7,12,16},
{8,9,10},{11,12,13},{14,15,16},{8,11,14},{9,12,15},{10,13,16}}";

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let (name, geometry, provenance) = match name {
        "fano" => (
            "fano",
            fano(),
            "7_3 projective plane of order 2, difference set {1,2,4} mod 7",
        ),
        "mobius_kantor" => (
            "mobius_kantor",
            cyclic(8, &[0, 1, 3]),
            "8_3, difference set {0,1,3} mod 8",
        ),
        "pappus" => ("pappus", pappus(), "9_3, affine plane of order 3 minus one parallel class"),
        "desargues" => (
            "desargues",
            desargues(),
            "10_3, points the 2-subsets and lines the 3-subsets of a 5-set",
        ),
        "example_14_3" => (
            "example_14_3",
            crate::incidence::parse_configuration(EXAMPLE_14_3)?,
            "14_3 with at most five mutually intersecting lines and minimum 0",
        ),
        "example_16_3" => (
            "example_16_3",
            crate::incidence::parse_configuration(EXAMPLE_16_3)?,
            "16_3 with at most five mutually intersecting lines and minimum 1",
        ),
        "six_mutual" => (
            "six_mutual",
            six_mutual(),
            "six pairwise intersecting lines abc, cde, aef, bge, fgc, agd on a..g = 1..7",
        ),
        "fano_pair" => ("fano_pair", fano_pair(), "connected sum of two fano at flags (1, line 0)"),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(CatalogEntry {
        name,
        geometry,
        provenance,
    })
}

/// Every builtin, in [`BUILTIN_NAMES`] order.
pub fn builtins() -> Vec<CatalogEntry> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).unwrap()).collect()
}

fn cyclic(modulus: Point, base: &[Point]) -> IncidenceGeometry {
    let lines = (0..modulus)
        .map(|i| base.iter().map(|b| (b + i) % modulus + 1).collect())
        .collect();
    IncidenceGeometry::new(modulus, lines).unwrap()
}

fn fano() -> IncidenceGeometry {
    // {i, i+1, i+3} mod 7 on labels 1..7: 124, 235, 346, 457, 561, 672, 713
    let lines = (0..7)
        .map(|i| [1, 2, 4].iter().map(|b| (b - 1 + i) % 7 + 1).collect())
        .collect();
    IncidenceGeometry::new(7, lines).unwrap()
}

fn pappus() -> IncidenceGeometry {
    let lines = [
        [1, 2, 3],
        [4, 5, 6],
        [7, 8, 9],
        [1, 5, 9],
        [2, 6, 7],
        [3, 4, 8],
        [1, 6, 8],
        [2, 4, 9],
        [3, 5, 7],
    ];
    IncidenceGeometry::new(9, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
}

fn desargues() -> IncidenceGeometry {
    let pairs: Vec<(u32, u32)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let label = |a: u32, b: u32| pairs.iter().position(|&p| p == (a, b)).unwrap() as Point + 1;
    let mut lines = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                lines.push(vec![label(a, b), label(a, c), label(b, c)]);
            }
        }
    }
    IncidenceGeometry::new(10, lines).unwrap()
}

fn six_mutual() -> IncidenceGeometry {
    // a b c d e f g = 1 2 3 4 5 6 7
    let lines = vec![
        vec![1, 2, 3],
        vec![3, 4, 5],
        vec![1, 5, 6],
        vec![2, 7, 5],
        vec![6, 7, 3],
        vec![1, 7, 4],
    ];
    IncidenceGeometry::new(7, lines).unwrap()
}

fn fano_pair() -> IncidenceGeometry {
    let fano = Configuration::try_from(fano()).unwrap();
    let sum = connected_sum(&SumSpec {
        left: &fano,
        right: &fano,
        p1: 1,
        l1: 0,
        p2: 1,
        l2: 0,
    })
    .unwrap();
    sum.configuration.into_geometry()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert_eq!(builtin("young").unwrap_err(), Error::UnknownBuiltin("young".into()));
    }

    #[test]
    fn named_v3_entries_classify() {
        for (name, v) in [
            ("fano", 7),
            ("mobius_kantor", 8),
            ("pappus", 9),
            ("desargues", 10),
            ("example_14_3", 14),
            ("example_16_3", 16),
            ("fano_pair", 14),
        ] {
            let c = builtin(name).unwrap().configuration().unwrap();
            assert!(c.is_symmetric_v3(), "{name}");
            assert_eq!(c.point_count(), v, "{name}");
        }
    }

    #[test]
    fn six_mutual_is_not_a_configuration() {
        let entry = builtin("six_mutual").unwrap();
        assert_eq!(entry.geometry.line_count(), 6);
        assert_eq!(entry.geometry.point_count(), 7);
        assert!(matches!(entry.configuration(), Err(Error::NotConfiguration(_))));
    }

    #[test]
    fn fano_lines() {
        let g = builtin("fano").unwrap().geometry;
        assert_eq!(g.to_brace_string(), "{{1,2,4},{2,3,5},{3,4,6},{4,5,7},{1,5,6},{2,6,7},{1,3,7}}");
    }
}
