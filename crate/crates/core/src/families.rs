//! Rectangles, parallelogram polyominoes, frame polyominoes and the lattice
//! chains of parallelograms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::grid::{Cell, GridPoint, Polyomino};

/// Sequence of grid points joined by unit east or north steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<GridPoint>", into = "Vec<GridPoint>")]
pub struct NorthEastPath {
    points: Vec<GridPoint>,
}

impl NorthEastPath {
    pub fn new(points: Vec<GridPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPath("path has no points".into()));
        }
        for w in points.windows(2) {
            let (di, dj) = (w[1].i - w[0].i, w[1].j - w[0].j);
            if (di, dj) != (1, 0) && (di, dj) != (0, 1) {
                return Err(Error::InvalidPath(format!("{} -> {} is not a unit step", w[0], w[1])));
            }
        }
        Ok(NorthEastPath { points })
    }

    pub fn from_pairs(pairs: &[(i32, i32)]) -> Result<Self> {
        NorthEastPath::new(pairs.iter().map(|&p| p.into()).collect())
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn start(&self) -> GridPoint {
        self.points[0]
    }

    pub fn end(&self) -> GridPoint {
        *self.points.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Row of each east step, indexed by the step's starting column.
    fn east_rows(&self) -> Vec<i32> {
        self.points
            .windows(2)
            .filter(|w| w[1].i == w[0].i + 1)
            .map(|w| w[0].j)
            .collect()
    }
}

impl TryFrom<Vec<GridPoint>> for NorthEastPath {
    type Error = Error;
    fn try_from(points: Vec<GridPoint>) -> Result<Self> {
        NorthEastPath::new(points)
    }
}

impl From<NorthEastPath> for Vec<GridPoint> {
    fn from(p: NorthEastPath) -> Self {
        p.points
    }
}

/// Unit-step path through the given corner points, each leg axis-parallel.
fn staircase(corners: &[GridPoint]) -> Result<NorthEastPath> {
    let mut pts = vec![corners[0]];
    for &target in &corners[1..] {
        let mut cur = *pts.last().unwrap();
        if target.i != cur.i && target.j != cur.j {
            return Err(Error::InvalidPath(format!("{cur} -> {target} is not axis-parallel")));
        }
        while cur != target {
            cur = if cur.i < target.i { cur.offset(1, 0) } else { cur.offset(0, 1) };
            if !cur.le(target) {
                return Err(Error::InvalidPath(format!("leg to {target} goes backwards")));
            }
            pts.push(cur);
        }
    }
    NorthEastPath::new(pts)
}

/// Whether `s1` lies above `s2`: at interior points sharing an abscissa,
/// the ordinate of `s1` strictly exceeds that of `s2`.
pub fn lies_above(s1: &NorthEastPath, s2: &NorthEastPath) -> Result<bool> {
    if s1.start() != s2.start() || s1.end() != s2.end() {
        return Err(Error::EndpointMismatch);
    }
    let interior = |p: &NorthEastPath| -> Vec<GridPoint> {
        let pts = p.points();
        if pts.len() < 3 {
            Vec::new()
        } else {
            pts[1..pts.len() - 1].to_vec()
        }
    };
    let (upper, lower) = (interior(s1), interior(s2));
    Ok(upper
        .iter()
        .all(|u| lower.iter().all(|l| u.i != l.i || u.j > l.j)))
}

/// Cells bounded above by `s1` and below by `s2`, after validating the pair.
pub fn parallelogram_cells(s1: &NorthEastPath, s2: &NorthEastPath) -> Result<Vec<Cell>> {
    if s1.start() != s2.start() || s1.end() != s2.end() {
        return Err(Error::EndpointMismatch);
    }
    let (start, end) = (s1.start(), s1.end());
    if start.i == end.i || start.j == end.j {
        return Err(Error::EmptyRegion);
    }
    if !lies_above(s1, s2)? {
        return Err(Error::PathsCross);
    }
    let high = s1.east_rows();
    let low = s2.east_rows();
    for x in 0..high.len() {
        if high[x] <= low[x] {
            return Err(Error::PathsCross);
        }
        if x + 1 < high.len() && low[x + 1] >= high[x] {
            return Err(Error::PathsCross);
        }
    }
    let mut cells = Vec::new();
    for (x, (&lo, &hi)) in low.iter().zip(&high).enumerate() {
        for y in lo..hi {
            cells.push(Cell::new(start.i + x as i32, y));
        }
    }
    Ok(cells)
}

pub fn build_parallelogram(s1: &NorthEastPath, s2: &NorthEastPath) -> Result<Polyomino> {
    Polyomino::from_cells(parallelogram_cells(s1, s2)?)
}

/// Rectangle polyomino with vertex interval `[(1,1), (m,n)]`.
pub fn build_rectangle(m: i32, n: i32) -> Result<Polyomino> {
    if m < 2 || n < 2 {
        return Err(Error::SpecViolation(format!("rectangle {m}x{n} has no cells")));
    }
    Polyomino::from_cells((1..m).flat_map(|i| (1..n).map(move |j| Cell::new(i, j))))
}

/// Recovers the bounding paths of a parallelogram polyomino, if it is one.
pub fn parallelogram_paths(p: &Polyomino) -> Option<(NorthEastPath, NorthEastPath)> {
    let (lo, hi) = p.bounding_box();
    let mut low = Vec::new();
    let mut high = Vec::new();
    for x in lo.i..hi.i {
        let rows: Vec<i32> = p.cells().iter().filter(|c| c.llc.i == x).map(|c| c.llc.j).collect();
        let (&first, &last) = (rows.first()?, rows.last()?);
        if (last - first + 1) as usize != rows.len() {
            return None;
        }
        low.push(first);
        high.push(last + 1);
    }
    let mut upper = vec![GridPoint::new(lo.i, low[0])];
    let mut lower = vec![GridPoint::new(lo.i, low[0])];
    for (x, (&l, &h)) in low.iter().zip(&high).enumerate() {
        let col = lo.i + x as i32;
        upper.push(GridPoint::new(col, h));
        upper.push(GridPoint::new(col + 1, h));
        lower.push(GridPoint::new(col, l));
        lower.push(GridPoint::new(col + 1, l));
    }
    lower.push(GridPoint::new(hi.i, *high.last().unwrap()));
    let s1 = staircase(&upper).ok()?;
    let s2 = staircase(&lower).ok()?;
    let cells = parallelogram_cells(&s1, &s2).ok()?;
    (cells.len() == p.rank() && cells.iter().all(|c| p.contains(*c))).then_some((s1, s2))
}

pub fn is_parallelogram(p: &Polyomino) -> bool {
    parallelogram_paths(p).is_some()
}

/// All north-east paths between two points, in lexicographic point order.
pub fn north_east_paths(from: GridPoint, to: GridPoint) -> Vec<NorthEastPath> {
    fn extend(cur: &mut Vec<GridPoint>, to: GridPoint, out: &mut Vec<NorthEastPath>) {
        let last = *cur.last().unwrap();
        if last == to {
            out.push(NorthEastPath { points: cur.clone() });
            return;
        }
        for next in [last.offset(0, 1), last.offset(1, 0)] {
            if next.le(to) {
                cur.push(next);
                extend(cur, to, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if from.le(to) {
        extend(&mut vec![from], to, &mut out);
    }
    out
}

/// All parallelogram polyominoes with at most `max_cells` cells, up to
/// translation, with bounding box starting at `(1, 1)`.
pub fn enumerate_parallelograms(max_cells: usize) -> Vec<Polyomino> {
    let mut out = Vec::new();
    let max = max_cells as i32;
    for w in 1..=max {
        for h in 1..=max {
            if w + h - 1 > max {
                continue;
            }
            let paths = north_east_paths(GridPoint::new(1, 1), GridPoint::new(1 + w, 1 + h));
            for s1 in &paths {
                for s2 in &paths {
                    if let Ok(cells) = parallelogram_cells(s1, s2) {
                        if cells.len() <= max_cells {
                            out.push(Polyomino::from_cells(cells).expect("parallelogram is connected"));
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.rank(), a.cells()).cmp(&(b.rank(), b.cells())));
    out
}

/// Parameters of a frame polyomino: the rectangle `[(1,1),(m,n)]` with the
/// parallelogram between `s1` (upper) and `s2` (lower) removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameSpec {
    pub m: i32,
    pub n: i32,
    pub s1: NorthEastPath,
    pub s2: NorthEastPath,
}

impl FrameSpec {
    pub fn new(m: i32, n: i32, s1: NorthEastPath, s2: NorthEastPath) -> Self {
        FrameSpec { m, n, s1, s2 }
    }

    pub fn a0(&self) -> i32 {
        self.s1.start().i
    }

    pub fn b0(&self) -> i32 {
        self.s1.start().j
    }

    pub fn ak(&self) -> i32 {
        self.s1.end().i
    }

    pub fn bk(&self) -> i32 {
        self.s1.end().j
    }

    /// `v` is a vertex of the lower-left box `[(1,1),(a0,b0)]`.
    pub fn in_lower_box(&self, v: GridPoint) -> bool {
        v.i >= 1 && v.j >= 1 && v.i <= self.a0() && v.j <= self.b0()
    }

    /// `v` is a vertex of the upper-right box `[(ak,bk),(m,n)]`.
    pub fn in_upper_box(&self, v: GridPoint) -> bool {
        v.i >= self.ak() && v.j >= self.bk() && v.i <= self.m && v.j <= self.n
    }

    fn validate(&self) -> Result<()> {
        if self.s1.start() != self.s2.start() || self.s1.end() != self.s2.end() {
            return Err(Error::EndpointMismatch);
        }
        let (a0, b0, ak, bk) = (self.a0(), self.b0(), self.ak(), self.bk());
        if !(1 < a0 && a0 < ak && ak < self.m) {
            return Err(Error::SpecViolation(format!(
                "need 1 < a0 < ak < m, got a0={a0} ak={ak} m={}",
                self.m
            )));
        }
        if !(1 < b0 && b0 < bk && bk < self.n) {
            return Err(Error::SpecViolation(format!(
                "need 1 < b0 < bk < n, got b0={b0} bk={bk} n={}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn hole(&self) -> Result<Vec<Cell>> {
        parallelogram_cells(&self.s1, &self.s2)
    }
}

pub fn build_frame(spec: &FrameSpec) -> Result<Polyomino> {
    spec.validate()?;
    let hole: BTreeSet<Cell> = spec.hole()?.into_iter().collect();
    let cells = (1..spec.m)
        .flat_map(|i| (1..spec.n).map(move |j| Cell::new(i, j)))
        .filter(|c| !hole.contains(c));
    Ok(Polyomino::from_cells(cells)?.with_frame(spec.clone()))
}

/// The two parallelogram bands of a frame and their common corner boxes.
///
/// `q` is stored as a cell set: the two boxes touch neither each other nor
/// share an edge, so it is not itself a polyomino.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameDecomposition {
    pub p1: Polyomino,
    pub p2: Polyomino,
    pub q: BTreeSet<Cell>,
    pub p1_paths: (NorthEastPath, NorthEastPath),
    pub p2_paths: (NorthEastPath, NorthEastPath),
}

pub fn decompose_frame(p: &Polyomino) -> Result<FrameDecomposition> {
    let spec = p.frame().ok_or(Error::NotAFrame)?;
    let (m, n) = (spec.m, spec.n);
    let (a0, b0, ak, bk) = (spec.a0(), spec.b0(), spec.ak(), spec.bk());
    let pt = GridPoint::new;

    let outer_left = staircase(&[pt(1, 1), pt(1, n), pt(m, n)])?;
    let outer_right = staircase(&[pt(1, 1), pt(m, 1), pt(m, n)])?;

    let mut inner_upper = staircase(&[pt(1, 1), pt(a0, 1)])?.points;
    inner_upper.extend_from_slice(spec.s1.points());
    inner_upper.extend_from_slice(&staircase(&[pt(ak, bk), pt(m, bk), pt(m, n)])?.points[1..]);
    let inner_upper = staircase(&dedup(inner_upper))?;

    let mut inner_lower = staircase(&[pt(1, 1), pt(1, b0), pt(a0, b0)])?.points;
    inner_lower.extend_from_slice(&spec.s2.points()[1..]);
    inner_lower.extend_from_slice(&staircase(&[pt(ak, bk), pt(ak, n), pt(m, n)])?.points[1..]);
    let inner_lower = staircase(&dedup(inner_lower))?;

    let p1 = build_parallelogram(&outer_left, &inner_upper)?;
    let p2 = build_parallelogram(&inner_lower, &outer_right)?;

    let q: BTreeSet<Cell> = p
        .cells()
        .iter()
        .copied()
        .filter(|c| spec.in_lower_box(c.upper_right()) || spec.in_upper_box(c.llc))
        .collect();
    let union: BTreeSet<Cell> = p1.cells().union(p2.cells()).copied().collect();
    let inter: BTreeSet<Cell> = p1.cells().intersection(p2.cells()).copied().collect();
    if &union != p.cells() || inter != q {
        return Err(Error::LemmaViolation("band decomposition does not cover the frame".into()));
    }
    Ok(FrameDecomposition {
        p1,
        p2,
        q,
        p1_paths: (outer_left, inner_upper),
        p2_paths: (inner_lower, outer_right),
    })
}

fn dedup(mut pts: Vec<GridPoint>) -> Vec<GridPoint> {
    pts.dedup();
    pts
}

/// A maximal chain of the vertex lattice of a parallelogram polyomino.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalChain {
    pub points: Vec<GridPoint>,
    pub descent_cells: Vec<Cell>,
}

impl MaximalChain {
    pub fn descents(&self) -> usize {
        self.descent_cells.len()
    }
}

/// Cells at which a monotone lattice path turns east-then-north.
pub fn descent_cells(p: &Polyomino, points: &[GridPoint]) -> Vec<Cell> {
    points
        .windows(3)
        .filter(|w| w[1] == w[0].offset(1, 0) && w[2] == w[1].offset(0, 1))
        .map(|w| Cell { llc: w[0] })
        .filter(|c| p.contains(*c))
        .collect()
}

pub fn maximal_chains(p: &Polyomino, budget: Budget) -> Result<Vec<MaximalChain>> {
    let (s1, _) = parallelogram_paths(p).ok_or(Error::NotParallelogram)?;
    let (bottom, top) = (s1.start(), s1.end());
    let mut out = Vec::new();
    let mut cur = vec![bottom];
    fn walk(
        p: &Polyomino,
        top: GridPoint,
        cur: &mut Vec<GridPoint>,
        out: &mut Vec<MaximalChain>,
        budget: Budget,
    ) -> Result<()> {
        let last = *cur.last().unwrap();
        if last == top {
            budget.check("maximal chains", out.len() as u128 + 1)?;
            out.push(MaximalChain { points: cur.clone(), descent_cells: descent_cells(p, cur) });
            return Ok(());
        }
        for next in [last.offset(0, 1), last.offset(1, 0)] {
            if p.has_unit_edge(last, next) && next.le(top) {
                cur.push(next);
                walk(p, top, cur, out, budget)?;
                cur.pop();
            }
        }
        Ok(())
    }
    walk(p, top, &mut cur, &mut out, budget)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(p: &[(i32, i32)]) -> NorthEastPath {
        NorthEastPath::from_pairs(p).unwrap()
    }

    pub(crate) fn p4_spec() -> FrameSpec {
        FrameSpec::new(4, 4, path(&[(2, 2), (2, 3), (3, 3)]), path(&[(2, 2), (3, 2), (3, 3)]))
    }

    pub(crate) fn p5_spec() -> FrameSpec {
        FrameSpec::new(
            5,
            5,
            path(&[(2, 2), (2, 3), (2, 4), (3, 4), (4, 4)]),
            path(&[(2, 2), (3, 2), (4, 2), (4, 3), (4, 4)]),
        )
    }

    #[test]
    fn path_validation() {
        assert!(NorthEastPath::from_pairs(&[(1, 1), (2, 2)]).is_err());
        assert!(NorthEastPath::from_pairs(&[(1, 1), (0, 1)]).is_err());
        assert!(NorthEastPath::from_pairs(&[]).is_err());
    }

    #[test]
    fn lies_above_fixtures() {
        let s = p4_spec();
        assert!(lies_above(&s.s1, &s.s2).unwrap());
        assert!(!lies_above(&s.s1, &s.s1).unwrap());
        let s = p5_spec();
        assert!(lies_above(&s.s1, &s.s2).unwrap());
        let short = path(&[(2, 2), (2, 3)]);
        assert_eq!(lies_above(&s.s1, &short), Err(Error::EndpointMismatch));
    }

    #[test]
    fn parallelograms() {
        let s1 = path(&[(1, 1), (1, 2), (1, 3), (2, 3), (3, 3)]);
        let s2 = path(&[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)]);
        let q2 = build_parallelogram(&s1, &s2).unwrap();
        assert_eq!(q2.rank(), 4);
        assert_eq!(q2.num_vertices(), 9);

        let s = p5_spec();
        let hole = build_parallelogram(&s.s1, &s.s2).unwrap();
        assert_eq!(
            hole.cells().iter().copied().collect::<Vec<_>>(),
            vec![Cell::new(2, 2), Cell::new(2, 3), Cell::new(3, 2), Cell::new(3, 3)]
        );

        // swapped roles: the "upper" path runs below
        assert_eq!(build_parallelogram(&s2, &s1), Err(Error::PathsCross));
        // the literal interior test misses a swap with no shared interior abscissa
        let up = path(&[(1, 1), (2, 1), (2, 2)]);
        let down = path(&[(1, 1), (1, 2), (2, 2)]);
        assert!(lies_above(&up, &down).unwrap());
        assert_eq!(build_parallelogram(&up, &down), Err(Error::PathsCross));
        // two cells touching at a corner
        let up = path(&[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]);
        let down = path(&[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]);
        assert_eq!(build_parallelogram(&up, &down), Err(Error::PathsCross));
        let flat = path(&[(1, 1), (1, 2)]);
        assert_eq!(build_parallelogram(&flat, &flat), Err(Error::EmptyRegion));
    }

    #[test]
    fn recognizes_parallelograms() {
        let q2 = build_rectangle(3, 3).unwrap();
        let (s1, s2) = parallelogram_paths(&q2).unwrap();
        assert_eq!(build_parallelogram(&s1, &s2).unwrap(), q2);
        let l = Polyomino::from_cells([Cell::new(1, 1), Cell::new(2, 1), Cell::new(2, 2)]).unwrap();
        assert!(is_parallelogram(&l));
        let l = Polyomino::from_cells([Cell::new(1, 2), Cell::new(2, 1), Cell::new(2, 2)]).unwrap();
        assert!(!is_parallelogram(&l));
        let p4 = build_frame(&p4_spec()).unwrap();
        assert!(!is_parallelogram(&p4));
    }

    #[test]
    fn frames() {
        let p4 = build_frame(&p4_spec()).unwrap();
        assert_eq!((p4.rank(), p4.num_vertices()), (8, 16));
        let p5 = build_frame(&p5_spec()).unwrap();
        assert_eq!((p5.rank(), p5.num_vertices()), (12, 24));
        let bad = FrameSpec::new(4, 4, path(&[(1, 2), (1, 3), (2, 3)]), path(&[(1, 2), (2, 2), (2, 3)]));
        assert!(matches!(build_frame(&bad), Err(Error::SpecViolation(_))));
        let s = p4_spec();
        let crossed = FrameSpec::new(4, 4, s.s2.clone(), s.s1.clone());
        assert_eq!(build_frame(&crossed), Err(Error::PathsCross));
    }

    #[test]
    fn frame_vertex_identity() {
        for spec in [p4_spec(), p5_spec()] {
            let p = build_frame(&spec).unwrap();
            let rect = build_rectangle(spec.m, spec.n).unwrap();
            let hole = build_parallelogram(&spec.s1, &spec.s2).unwrap();
            let lhs = p.num_vertices() as i64 - p.rank() as i64;
            let rhs = rect.num_vertices() as i64 - rect.rank() as i64
                - (hole.num_vertices() as i64 - hole.rank() as i64)
                + spec.s1.len() as i64
                + spec.s2.len() as i64
                - 2;
            assert_eq!(lhs, rhs);
            assert_eq!(
                p.num_vertices() as i64,
                rect.num_vertices() as i64 - hole.num_vertices() as i64 + spec.s1.len() as i64
                    + spec.s2.len() as i64
                    - 2
            );
        }
    }

    #[test]
    fn decompositions() {
        let p4 = build_frame(&p4_spec()).unwrap();
        let d = decompose_frame(&p4).unwrap();
        assert_eq!(d.q, BTreeSet::from([Cell::new(1, 1), Cell::new(3, 3)]));
        assert_eq!((d.p1.rank(), d.p2.rank()), (5, 5));
        assert!(is_parallelogram(&d.p1) && is_parallelogram(&d.p2));

        let p5 = build_frame(&p5_spec()).unwrap();
        let d = decompose_frame(&p5).unwrap();
        assert_eq!(d.q.len(), 2);
        assert_eq!(d.p1.rank() + d.p2.rank() - d.q.len(), 12);

        let c1 = Polyomino::from_cells([Cell::new(1, 1)]).unwrap();
        assert_eq!(decompose_frame(&c1), Err(Error::NotAFrame));
    }

    #[test]
    fn chains_of_square() {
        let q2 = build_rectangle(3, 3).unwrap();
        let chains = maximal_chains(&q2, Budget::DEFAULT).unwrap();
        assert_eq!(chains.len(), 6);
        let up_first = chains
            .iter()
            .find(|c| c.points == [(1, 1), (1, 2), (1, 3), (2, 3), (3, 3)].map(GridPoint::from))
            .unwrap();
        assert_eq!(up_first.descents(), 0);
        let zigzag = chains
            .iter()
            .find(|c| c.points == [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)].map(GridPoint::from))
            .unwrap();
        assert_eq!(zigzag.descent_cells, vec![Cell::new(1, 1), Cell::new(2, 2)]);
        let p4 = build_frame(&p4_spec()).unwrap();
        assert_eq!(maximal_chains(&p4, Budget::DEFAULT), Err(Error::NotParallelogram));
    }

    #[test]
    fn enumerated_parallelograms_are_distinct() {
        let all = enumerate_parallelograms(4);
        let distinct: BTreeSet<_> = all.iter().map(|p| p.cells().clone()).collect();
        assert_eq!(distinct.len(), all.len());
        // parallelogram polyominoes by area: 1, 2, 4, 9 (fixed, up to translation)
        let per_rank: Vec<usize> =
            (1..=4).map(|r| all.iter().filter(|p| p.rank() == r).count()).collect();
        assert_eq!(per_rank, vec![1, 2, 4, 9]);
    }
}
