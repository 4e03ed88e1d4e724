//! `F_{q²}` as the affine plane `AG(2, q)`: lines, slopes, `m`-ary lines, and
//! the orthogonal array whose block graph is `GP(q², m)`.
//!
//! A point is `x + yα` with `x, y ∈ F_q`. Every slope is an `F_q*`-multiple of
//! exactly one canonical slope in `{1} ∪ {c + α : c ∈ F_q}`.

use std::io::{self, Write};

use thiserror::Error;

use crate::ffield::{Elem, Field};
use crate::gpgraph::GpGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a line needs a nonzero slope")]
    ZeroSlope,
    #[error("two distinct points are needed to span a line")]
    CoincidentPoints,
}

/// Canonical representative of the slope class of `s ≠ 0`.
pub fn canonical_slope(f: &Field, s: Elem) -> Elem {
    let (x, y) = f.fq_coords(s);
    if y.is_zero() {
        Elem::ONE
    } else {
        let c = f.div(x, y).expect("y is nonzero");
        f.add(c, f.alpha())
    }
}

/// `1` followed by `c + α` for `c` in canonical `F_q` order.
pub fn canonical_slopes(f: &Field) -> Vec<Elem> {
    std::iter::once(Elem::ONE)
        .chain(f.fq_elements().map(|c| f.add(c, f.alpha())))
        .collect()
}

/// Index of the line with canonical slope `slope` through `pt` within its
/// parallel class: `y` for slope `1`, and `x − y·i` for slope `i + α`,
/// reported as a position in the canonical `F_q` listing.
pub fn parallel_index(f: &Field, slope: Elem, pt: Elem) -> u32 {
    let (x, y) = f.fq_coords(pt);
    let j = if slope == Elem::ONE {
        y
    } else {
        let i = f.sub(slope, f.alpha());
        f.sub(x, f.mul(y, i))
    };
    f.fq_index(j).expect("coordinates lie in F_q")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    /// Least point of the line.
    base: Elem,
    /// Canonical slope.
    slope: Elem,
    /// All `q` points, sorted.
    points: Vec<Elem>,
}

impl Line {
    /// The line `{pt + c·slope : c ∈ F_q}`.
    pub fn new(f: &Field, pt: Elem, slope: Elem) -> Result<Line, GeometryError> {
        if slope.is_zero() {
            return Err(GeometryError::ZeroSlope);
        }
        let slope = canonical_slope(f, slope);
        let mut points: Vec<Elem> = f.fq_elements().map(|c| f.add(pt, f.mul(c, slope))).collect();
        points.sort_unstable();
        Ok(Line {
            base: points[0],
            slope,
            points,
        })
    }

    pub fn through(f: &Field, a: Elem, b: Elem) -> Result<Line, GeometryError> {
        if a == b {
            return Err(GeometryError::CoincidentPoints);
        }
        Line::new(f, a, f.sub(b, a))
    }

    pub fn base(&self) -> Elem {
        self.base
    }

    pub fn slope(&self) -> Elem {
        self.slope
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn contains(&self, pt: Elem) -> bool {
        self.points.binary_search(&pt).is_ok()
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        self.slope == other.slope
    }
}

/// All `q² + q` lines, grouped by canonical slope.
pub fn all_lines(f: &Field) -> Vec<Line> {
    canonical_slopes(f)
        .into_iter()
        .flat_map(|s| {
            let shift = if s == Elem::ONE { f.alpha() } else { Elem::ONE };
            f.fq_elements()
                .map(move |j| Line::new(f, f.mul(j, shift), s).expect("canonical slopes are nonzero"))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Whether the slope of `line` is an `m`-th power (the choice of
/// representative does not matter, as `F_q*` consists of `m`-th powers).
pub fn is_mary_line(g: &GpGraph, line: &Line) -> bool {
    g.is_connection(line.slope)
}

/// Canonical slopes that are `m`-th powers, in canonical slope order.
pub fn mary_slopes(g: &GpGraph) -> Vec<Elem> {
    canonical_slopes(g.field())
        .into_iter()
        .filter(|&s| g.is_connection(s))
        .collect()
}

/// The `(q+1)/m` lines through `pt` with `m`-ary slope.
pub fn mary_lines_through(g: &GpGraph, pt: Elem) -> Vec<Line> {
    mary_slopes(g)
        .into_iter()
        .map(|s| Line::new(g.field(), pt, s).expect("slopes are nonzero"))
        .collect()
}

/// `OA((q+1)/m, q)` from the `m`-ary parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    n: u32,
    /// Canonical slope of each row.
    row_slopes: Vec<Elem>,
    /// Column `j` is indexed by vertex `j`.
    column_elements: Vec<Elem>,
    /// `entries[r][j]`: symbol in `0..n` of row `r`, column `j`.
    entries: Vec<Vec<u32>>,
}

impl OrthogonalArray {
    pub fn w(&self) -> usize {
        self.row_slopes.len()
    }

    /// Number of symbols.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn row_slopes(&self) -> &[Elem] {
        &self.row_slopes
    }

    pub fn column_elements(&self) -> &[Elem] {
        &self.column_elements
    }

    pub fn entry(&self, row: usize, column: usize) -> u32 {
        self.entries[row][column]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
        self.row_slopes.swap(a, b);
    }

    /// Every ordered symbol pair appears exactly once in each pair of rows.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.n as usize;
        if self.column_elements.len() != n * n {
            return false;
        }
        let mut seen = vec![false; n * n];
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                seen.iter_mut().for_each(|s| *s = false);
                for (&x, &y) in a.iter().zip(b) {
                    let slot = &mut seen[x as usize * n + y as usize];
                    if *slot {
                        return false;
                    }
                    *slot = true;
                }
            }
        }
        true
    }

    /// Whether columns `a` and `b` agree in some row.
    pub fn columns_collide(&self, a: usize, b: usize) -> bool {
        self.entries.iter().any(|row| row[a] == row[b])
    }

    /// The canonical clique `{columns with entry `symbol` in `row`}`.
    pub fn symbol_class(&self, row: usize, symbol: u32) -> Vec<Elem> {
        self.entries[row]
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == symbol)
            .map(|(j, _)| self.column_elements[j])
            .collect()
    }

    /// CSV: one line per row, `q²` symbols per line, columns in vertex order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

pub fn build_oa(g: &GpGraph) -> OrthogonalArray {
    let f = g.field();
    let row_slopes = mary_slopes(g);
    let column_elements: Vec<Elem> = g.vertices().collect();
    let entries = row_slopes
        .iter()
        .map(|&s| column_elements.iter().map(|&pt| parallel_index(f, s, pt)).collect())
        .collect();
    OrthogonalArray {
        n: f.q(),
        row_slopes,
        column_elements,
        entries,
    }
}

/// Exhaustively compares the block graph of `oa` with `g` on every column
/// pair, then checks that each symbol class is an `m`-ary line (hence a
/// canonical clique of `g`) and that the classes are exactly the `m`-ary lines.
pub fn block_graph_equals_gp(oa: &OrthogonalArray, g: &GpGraph) -> bool {
    let cols = oa.column_elements();
    if cols.len() != g.order() as usize {
        return false;
    }
    // Transpose so each column's symbols are contiguous.
    let w = oa.w();
    let by_column: Vec<u32> = (0..cols.len())
        .flat_map(|j| oa.entries.iter().map(move |row| row[j]))
        .collect();
    for a in 0..cols.len() {
        let ca = &by_column[a * w..(a + 1) * w];
        for b in a + 1..cols.len() {
            let cb = &by_column[b * w..(b + 1) * w];
            let collide = ca.iter().zip(cb).any(|(x, y)| x == y);
            if collide != g.adjacent(cols[a], cols[b]) {
                return false;
            }
        }
    }

    let f = g.field();
    let mut classes = Vec::with_capacity(w * oa.n as usize);
    for (r, &slope) in oa.row_slopes.iter().enumerate() {
        for symbol in 0..oa.n {
            let mut class = oa.symbol_class(r, symbol);
            class.sort_unstable();
            let Some(&first) = class.first() else {
                return false;
            };
            let Ok(line) = Line::new(f, first, slope) else {
                return false;
            };
            if line.points() != class.as_slice() || !is_mary_line(g, &line) {
                return false;
            }
            classes.push(class);
        }
    }
    classes.sort();
    let mut lines: Vec<Vec<Elem>> = all_lines(f)
        .into_iter()
        .filter(|l| is_mary_line(g, l))
        .map(|l| l.points)
        .collect();
    lines.sort();
    classes == lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subfield_line_is_mary() {
        for (q, m) in [(5, 2), (11, 3), (11, 4), (27, 7)] {
            let g = GpGraph::for_q(q, m).unwrap();
            let f = g.field();
            let fq = Line::new(f, Elem::ZERO, Elem::ONE).unwrap();
            assert!(is_mary_line(&g, &fq));
            let alpha_fq = Line::new(f, Elem::ZERO, f.alpha()).unwrap();
            assert_eq!(
                is_mary_line(&g, &alpha_fq),
                ((q as u32 + 1) / 2) % m == 0,
                "q={q} m={m}"
            );
        }
    }

    #[test]
    fn mary_line_points_pairwise_adjacent() {
        let g = GpGraph::for_q(11, 3).unwrap();
        for line in all_lines(g.field()) {
            if is_mary_line(&g, &line) {
                assert!(g.is_clique(line.points()));
            } else {
                let p = line.points();
                assert!(!g.adjacent(p[0], p[1]));
            }
        }
    }

    #[test]
    fn pencil_sizes() {
        for (q, m, expected) in [(5, 2, 3), (27, 7, 4), (5, 6, 1), (11, 12, 1)] {
            let g = GpGraph::for_q(q, m).unwrap();
            let lines = mary_lines_through(&g, Elem::ZERO);
            assert_eq!(lines.len(), expected);
            for (i, a) in lines.iter().enumerate() {
                for b in &lines[i + 1..] {
                    let shared: Vec<_> = a.points().iter().filter(|p| b.contains(**p)).collect();
                    assert_eq!(shared, vec![&Elem::ZERO]);
                }
            }
        }
        let g = GpGraph::for_q(5, 6).unwrap();
        let line = &mary_lines_through(&g, Elem::ONE)[0];
        let fq = Line::new(g.field(), Elem::ZERO, Elem::ONE).unwrap();
        assert_eq!(line, &fq);
    }

    #[test]
    fn canonical_slope_classes() {
        let f = Field::new(7, 2).unwrap();
        let slopes = canonical_slopes(&f);
        assert_eq!(slopes.len(), 8);
        for s in f.nonzero_elements() {
            let c = canonical_slope(&f, s);
            assert!(slopes.contains(&c));
            assert!(f.is_in_fq(f.div(s, c).unwrap()));
        }
    }

    #[test]
    fn oa_small_cases() {
        for (q, m, w) in [(3, 2, 2), (5, 2, 3), (27, 7, 4)] {
            let g = GpGraph::for_q(q, m).unwrap();
            let oa = build_oa(&g);
            assert_eq!((oa.w(), oa.n()), (w, q as u32));
            assert!(oa.is_orthogonal());
            assert!(block_graph_equals_gp(&oa, &g));
        }
    }

    #[test]
    fn row_swap_is_harmless() {
        let g = GpGraph::for_q(3, 2).unwrap();
        let mut oa = build_oa(&g);
        oa.swap_rows(0, 1);
        assert!(oa.is_orthogonal());
        assert!(block_graph_equals_gp(&oa, &g));
    }

    #[test]
    fn broken_oa_detected() {
        let g = GpGraph::for_q(5, 2).unwrap();
        let mut oa = build_oa(&g);
        oa.entries[0].swap(3, 4);
        assert!(!block_graph_equals_gp(&oa, &g) || !oa.is_orthogonal());
    }

    #[test]
    fn csv_shape() {
        let g = GpGraph::for_q(3, 2).unwrap();
        let mut buf = Vec::new();
        build_oa(&g).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.split(',').count() == 9));
    }
}
