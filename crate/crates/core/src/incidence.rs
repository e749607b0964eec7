//! Incidence geometries and configurations of points and lines.
//!
//! Points carry 1-based labels exactly as they appear in the input text. Each
//! line is stored with its labels sorted; line order is input order and line
//! indices are 0-based.
//!
//! Two text formats are understood:
//!
//! * brace format, `{{1,2,3},{3,4,5},...}` with arbitrary whitespace;
//! * plain format, one line per row with space-separated labels and `#` comments.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::GeometryError;
use crate::graph::Graph;

pub type Point = u32;

const NO_LINE: u32 = u32::MAX;

/// A finite set of points `1..=point_count` with a list of lines, any two
/// points sharing at most one line.
#[derive(Clone)]
pub struct IncidenceGeometry {
    point_count: u32,
    lines: Vec<Vec<Point>>,
    // pair_line[(p - 1) * n + (q - 1)] is the line through p and q, or NO_LINE.
    pair_line: Vec<u32>,
}

impl IncidenceGeometry {
    /// Validates `lines` over the points `1..=point_count`.
    pub fn new(point_count: u32, lines: Vec<Vec<Point>>) -> Result<Self, GeometryError> {
        if lines.is_empty() {
            return Err(GeometryError::Empty);
        }
        let n = point_count as usize;
        let mut sorted_lines = Vec::with_capacity(lines.len());
        let mut seen: HashMap<Vec<Point>, usize> = HashMap::new();
        for (index, line) in lines.into_iter().enumerate() {
            if let Some(&label) = line.iter().find(|&&p| p == 0 || p > point_count) {
                return Err(GeometryError::InvalidLabel {
                    line: index,
                    label: label.into(),
                    point_count,
                });
            }
            let mut sorted = line;
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(GeometryError::DuplicatePoint {
                    line: index,
                    point: w[0],
                });
            }
            if sorted.len() < 2 {
                return Err(GeometryError::LineTooShort { line: index });
            }
            if let Some(&first) = seen.get(&sorted) {
                return Err(GeometryError::DuplicateLine { line: index, first });
            }
            seen.insert(sorted.clone(), index);
            sorted_lines.push(sorted);
        }

        let mut pair_line = vec![NO_LINE; n * n];
        for (index, line) in sorted_lines.iter().enumerate() {
            for (i, &p) in line.iter().enumerate() {
                for &q in &line[i + 1..] {
                    let slot = (p as usize - 1) * n + (q as usize - 1);
                    if pair_line[slot] != NO_LINE {
                        return Err(GeometryError::Linearity {
                            line: index,
                            other: pair_line[slot] as usize,
                            pair: (p, q),
                        });
                    }
                    pair_line[slot] = index as u32;
                    pair_line[(q as usize - 1) * n + (p as usize - 1)] = index as u32;
                }
            }
        }

        Ok(IncidenceGeometry {
            point_count,
            lines: sorted_lines,
            pair_line,
        })
    }

    /// Builds a geometry whose point count is the largest label referenced.
    pub fn from_lines(lines: Vec<Vec<Point>>) -> Result<Self, GeometryError> {
        let point_count = lines.iter().flatten().copied().max().unwrap_or(0);
        Self::new(point_count, lines)
    }

    pub fn point_count(&self) -> usize {
        self.point_count as usize
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<Point>] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> &[Point] {
        &self.lines[index]
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        1..=self.point_count
    }

    pub fn line_through(&self, p: Point, q: Point) -> Option<usize> {
        if p == q {
            return None;
        }
        let n = self.point_count as usize;
        match self.pair_line[(p as usize - 1) * n + (q as usize - 1)] {
            NO_LINE => None,
            l => Some(l as usize),
        }
    }

    pub fn collinear(&self, p: Point, q: Point) -> bool {
        self.line_through(p, q).is_some()
    }

    pub fn contains(&self, line: usize, p: Point) -> bool {
        self.lines[line].binary_search(&p).is_ok()
    }

    pub fn lines_through(&self, p: Point) -> impl Iterator<Item = usize> + '_ {
        self.lines
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.binary_search(&p).is_ok())
            .map(|(i, _)| i)
    }

    pub fn point_degree(&self, p: Point) -> usize {
        self.lines_through(p).count()
    }

    /// The shared point of two distinct lines, if any.
    pub fn intersection(&self, a: usize, b: usize) -> Option<Point> {
        if a == b {
            return None;
        }
        let (x, y) = (&self.lines[a], &self.lines[b]);
        let (mut i, mut j) = (0, 0);
        let mut shared = None;
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    debug_assert!(shared.is_none(), "lines {a} and {b} share two points");
                    shared = Some(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        shared
    }

    /// Restriction to a subset of lines, keeping all point labels.
    pub fn sub_geometry(&self, line_indices: &[usize]) -> Result<Self, GeometryError> {
        let lines = line_indices.iter().map(|&i| self.lines[i].clone()).collect();
        Self::new(self.point_count, lines)
    }

    pub fn to_brace_string(&self) -> String {
        let body: Vec<String> = self
            .lines
            .iter()
            .map(|l| {
                let labels: Vec<String> = l.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        format!("{{{}}}", body.join(","))
    }

    pub fn to_plain_string(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let labels: Vec<String> = l.iter().map(|p| p.to_string()).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }
}

impl PartialEq for IncidenceGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.point_count == other.point_count && self.lines == other.lines
    }
}

impl Eq for IncidenceGeometry {}

impl fmt::Debug for IncidenceGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IncidenceGeometry")
            .field("point_count", &self.point_count)
            .field("lines", &self.lines)
            .finish()
    }
}

impl Serialize for IncidenceGeometry {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            points: u32,
            lines: &'a [Vec<Point>],
        }
        Repr {
            points: self.point_count,
            lines: &self.lines,
        }
        .serialize(serializer)
    }
}

/// Parses either text format; input starting with `{` is treated as brace format.
pub fn parse_configuration(text: &str) -> Result<IncidenceGeometry, GeometryError> {
    let lines = if text.trim_start().starts_with('{') {
        parse_brace(text)?
    } else {
        parse_plain(text)?
    };
    IncidenceGeometry::from_lines(lines)
}

fn parse_brace(text: &str) -> Result<Vec<Vec<Point>>, GeometryError> {
    let mut cursor = Cursor::new(text);
    cursor.expect(b'{')?;
    let mut lines = Vec::new();
    cursor.skip_ws();
    if cursor.peek() == Some(b'}') {
        cursor.bump();
    } else {
        loop {
            cursor.expect(b'{')?;
            let mut line = Vec::new();
            loop {
                line.push(cursor.label(lines.len())?);
                cursor.skip_ws();
                match cursor.peek() {
                    Some(b',') => cursor.bump(),
                    Some(b'}') => {
                        cursor.bump();
                        break;
                    }
                    _ => return Err(cursor.error("expected `,` or `}` inside a line")),
                }
            }
            lines.push(line);
            cursor.skip_ws();
            match cursor.peek() {
                Some(b',') => cursor.bump(),
                Some(b'}') => {
                    cursor.bump();
                    break;
                }
                _ => return Err(cursor.error("expected `,` or `}` between lines")),
            }
        }
    }
    cursor.skip_ws();
    if cursor.peek().is_some() {
        return Err(cursor.error("trailing characters after the line list"));
    }
    Ok(lines)
}

fn parse_plain(text: &str) -> Result<Vec<Vec<Point>>, GeometryError> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for row in text.split_inclusive('\n') {
        let content = row.split('#').next().unwrap_or("");
        let mut line = Vec::new();
        for token in content.split_whitespace() {
            let at = offset + (token.as_ptr() as usize - row.as_ptr() as usize);
            let value: u64 = token.parse().map_err(|_| GeometryError::Syntax {
                offset: at,
                message: format!("`{token}` is not a point label"),
            })?;
            line.push(to_label(value, lines.len())?);
        }
        if !line.is_empty() {
            lines.push(line);
        }
        offset += row.len();
    }
    Ok(lines)
}

fn to_label(value: u64, line: usize) -> Result<Point, GeometryError> {
    match Point::try_from(value) {
        Ok(p) if p != 0 && p != u32::MAX => Ok(p),
        _ => Err(GeometryError::InvalidLabel {
            line,
            label: value,
            point_count: 0,
        }),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn error(&self, message: &str) -> GeometryError {
        GeometryError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), GeometryError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn label(&mut self, line: usize) -> Result<Point, GeometryError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a point label"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value: u64 = digits.parse().map_err(|_| GeometryError::Syntax {
            offset: start,
            message: format!("`{digits}` is too large"),
        })?;
        to_label(value, line)
    }
}

/// A geometry in which every point lies on `s` lines and every line has `t` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    geometry: IncidenceGeometry,
    s: usize,
    t: usize,
}

impl Configuration {
    pub fn geometry(&self) -> &IncidenceGeometry {
        &self.geometry
    }

    pub fn into_geometry(self) -> IncidenceGeometry {
        self.geometry
    }

    /// Lines through each point.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Points on each line.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn is_symmetric_v3(&self) -> bool {
        self.s == 3 && self.t == 3 && self.geometry.line_count() == self.geometry.point_count()
    }
}

impl Deref for Configuration {
    type Target = IncidenceGeometry;

    fn deref(&self) -> &IncidenceGeometry {
        &self.geometry
    }
}

impl TryFrom<IncidenceGeometry> for Configuration {
    type Error = Diagnostic;

    fn try_from(geometry: IncidenceGeometry) -> Result<Self, Diagnostic> {
        let diagnostic = Diagnostic::of(&geometry);
        if !diagnostic.is_configuration() {
            return Err(diagnostic);
        }
        let s = *diagnostic.point_degrees.keys().next().unwrap();
        let t = *diagnostic.line_sizes.keys().next().unwrap();
        Ok(Configuration { geometry, s, t })
    }
}

/// Why a geometry is not a configuration: degree and size classes, and the point floor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub point_count: usize,
    /// degree -> points with that degree
    pub point_degrees: BTreeMap<usize, Vec<Point>>,
    /// size -> line indices with that size
    pub line_sizes: BTreeMap<usize, Vec<usize>>,
}

impl Diagnostic {
    fn of(geometry: &IncidenceGeometry) -> Self {
        let mut degrees = vec![0usize; geometry.point_count()];
        for line in geometry.lines() {
            for &p in line {
                degrees[p as usize - 1] += 1;
            }
        }
        let mut point_degrees: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
        for (i, &d) in degrees.iter().enumerate() {
            point_degrees.entry(d).or_default().push(i as Point + 1);
        }
        let mut line_sizes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, line) in geometry.lines().iter().enumerate() {
            line_sizes.entry(line.len()).or_default().push(i);
        }
        Diagnostic {
            point_count: geometry.point_count(),
            point_degrees,
            line_sizes,
        }
    }

    pub fn is_configuration(&self) -> bool {
        self.point_count >= 3 && self.point_degrees.len() == 1 && self.line_sizes.len() == 1
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.point_count < 3 {
            parts.push(format!("only {} points (at least 3 required)", self.point_count));
        }
        if self.point_degrees.len() > 1 {
            let classes: Vec<String> = self
                .point_degrees
                .iter()
                .map(|(d, ps)| format!("degree {d}: points {ps:?}"))
                .collect();
            parts.push(format!("nonuniform point degrees ({})", classes.join("; ")));
        }
        if self.line_sizes.len() > 1 {
            let classes: Vec<String> = self
                .line_sizes
                .iter()
                .map(|(s, ls)| format!("size {s}: lines {ls:?}"))
                .collect();
            parts.push(format!("nonuniform line sizes ({})", classes.join("; ")));
        }
        if parts.is_empty() {
            parts.push("uniform".to_string());
        }
        f.write_str(&parts.join(", "))
    }
}

pub fn classify(geometry: &IncidenceGeometry) -> Result<Configuration, Diagnostic> {
    Configuration::try_from(geometry.clone())
}

/// Points as vertices `p - 1`; an edge joins every collinear pair.
pub fn menger_graph(geometry: &IncidenceGeometry) -> Graph {
    let mut graph = Graph::new(geometry.point_count());
    for line in geometry.lines() {
        for (i, &p) in line.iter().enumerate() {
            for &q in &line[i + 1..] {
                graph.add_edge(p as usize - 1, q as usize - 1);
            }
        }
    }
    graph
}

/// Lines as vertices; an edge joins every pair of lines sharing a point.
pub fn line_intersection_graph(geometry: &IncidenceGeometry) -> Graph {
    let m = geometry.line_count();
    let mut graph = Graph::new(m);
    for a in 0..m {
        for b in a + 1..m {
            let shared = geometry.lines[a]
                .iter()
                .filter(|p| geometry.lines[b].binary_search(p).is_ok())
                .count();
            assert!(shared <= 1, "lines {a} and {b} share {shared} points");
            if shared == 1 {
                graph.add_edge(a, b);
            }
        }
    }
    graph
}
