//! Integer grid geometry: points, intervals, cells and polyominoes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FrameSpec;

/// A point of the integer grid. Serialized as `[i, j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct GridPoint {
    pub i: i32,
    pub j: i32,
}

impl GridPoint {
    pub const fn new(i: i32, j: i32) -> Self {
        GridPoint { i, j }
    }

    /// Sort key realizing the variable order: rows first, then columns.
    pub fn order_key(self) -> (i32, i32) {
        (self.j, self.i)
    }

    pub fn offset(self, di: i32, dj: i32) -> Self {
        GridPoint::new(self.i + di, self.j + dj)
    }

    /// Componentwise `self <= other`.
    pub fn le(self, other: GridPoint) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl From<(i32, i32)> for GridPoint {
    fn from((i, j): (i32, i32)) -> Self {
        GridPoint::new(i, j)
    }
}

impl From<GridPoint> for (i32, i32) {
    fn from(p: GridPoint) -> Self {
        (p.i, p.j)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `x_u > x_v` in the variable order: higher row wins, then larger column.
pub fn vertex_exceeds(u: GridPoint, v: GridPoint) -> bool {
    u.order_key() > v.order_key()
}

/// Closed interval `[lo, hi]` of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridInterval {
    pub lo: GridPoint,
    pub hi: GridPoint,
}

impl GridInterval {
    pub fn new(lo: GridPoint, hi: GridPoint) -> Result<Self> {
        if !lo.le(hi) {
            return Err(Error::InvalidArgument(format!("interval [{lo},{hi}] is not ordered")));
        }
        Ok(GridInterval { lo, hi })
    }

    pub fn is_proper(&self) -> bool {
        self.lo.i < self.hi.i && self.lo.j < self.hi.j
    }

    /// Upper-left and lower-right corners, in that order.
    pub fn anti_diagonal(&self) -> (GridPoint, GridPoint) {
        (GridPoint::new(self.lo.i, self.hi.j), GridPoint::new(self.hi.i, self.lo.j))
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.lo.le(p) && p.le(self.hi)
    }

    /// Cells of the cell interval associated with this interval.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.lo.i..self.hi.i)
            .flat_map(move |i| (self.lo.j..self.hi.j).map(move |j| Cell::new(i, j)))
    }
}

impl fmt::Display for GridInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Unit cell identified by its lower-left corner. Serialized as `[i, j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Cell {
    pub llc: GridPoint,
}

impl Cell {
    pub const fn new(i: i32, j: i32) -> Self {
        Cell { llc: GridPoint::new(i, j) }
    }

    pub fn lower_right(self) -> GridPoint {
        self.llc.offset(1, 0)
    }

    pub fn upper_left(self) -> GridPoint {
        self.llc.offset(0, 1)
    }

    pub fn upper_right(self) -> GridPoint {
        self.llc.offset(1, 1)
    }

    pub fn corners(self) -> [GridPoint; 4] {
        [self.llc, self.lower_right(), self.upper_left(), self.upper_right()]
    }

    pub fn neighbors(self) -> [Cell; 4] {
        let GridPoint { i, j } = self.llc;
        [Cell::new(i + 1, j), Cell::new(i - 1, j), Cell::new(i, j + 1), Cell::new(i, j - 1)]
    }
}

impl From<(i32, i32)> for Cell {
    fn from(p: (i32, i32)) -> Self {
        Cell { llc: p.into() }
    }
}

impl From<Cell> for (i32, i32) {
    fn from(c: Cell) -> Self {
        c.llc.into()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.llc.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeInterval {
    pub lo: GridPoint,
    pub hi: GridPoint,
    pub orientation: Orientation,
    pub maximal: bool,
}

impl EdgeInterval {
    pub fn contains(&self, p: GridPoint) -> bool {
        self.lo.le(p) && p.le(self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    pub holes: Vec<BTreeSet<Cell>>,
}

/// 2D prefix sums over the cell bounding box, for O(1) "all cells present" queries.
#[derive(Debug, Clone)]
struct CellGrid {
    min: GridPoint,
    width: i32,
    height: i32,
    prefix: Vec<u32>,
}

impl CellGrid {
    fn new(cells: &BTreeSet<Cell>) -> Self {
        let min_i = cells.iter().map(|c| c.llc.i).min().unwrap();
        let max_i = cells.iter().map(|c| c.llc.i).max().unwrap();
        let min_j = cells.iter().map(|c| c.llc.j).min().unwrap();
        let max_j = cells.iter().map(|c| c.llc.j).max().unwrap();
        let width = max_i - min_i + 1;
        let height = max_j - min_j + 1;
        let stride = (width + 1) as usize;
        let mut prefix = vec![0u32; stride * (height + 1) as usize];
        for y in 0..height {
            for x in 0..width {
                let present = cells.contains(&Cell::new(min_i + x, min_j + y)) as u32;
                let (x, y) = (x as usize, y as usize);
                prefix[(y + 1) * stride + x + 1] = present + prefix[y * stride + x + 1]
                    + prefix[(y + 1) * stride + x]
                    - prefix[y * stride + x];
            }
        }
        CellGrid { min: GridPoint::new(min_i, min_j), width, height, prefix }
    }

    /// True iff every cell with lower-left corner in `[lo, hi]` (inclusive) is present.
    fn full(&self, lo: GridPoint, hi: GridPoint) -> bool {
        if lo.i > hi.i || lo.j > hi.j {
            return true;
        }
        let x0 = lo.i - self.min.i;
        let y0 = lo.j - self.min.j;
        let x1 = hi.i - self.min.i;
        let y1 = hi.j - self.min.j;
        if x0 < 0 || y0 < 0 || x1 >= self.width || y1 >= self.height {
            return false;
        }
        let stride = (self.width + 1) as usize;
        let at = |x: i32, y: i32| self.prefix[y as usize * stride + x as usize];
        let count = at(x1 + 1, y1 + 1) + at(x0, y0) - at(x0, y1 + 1) - at(x1 + 1, y0);
        count as i64 == (x1 - x0 + 1) as i64 * (y1 - y0 + 1) as i64
    }
}

/// A finite edge-connected set of cells, with derived vertex data.
///
/// Vertices are stored ascending in the variable order, so vertex index 0
/// is the smallest variable.
#[derive(Debug, Clone)]
pub struct Polyomino {
    cells: BTreeSet<Cell>,
    vertices: Vec<GridPoint>,
    index: HashMap<GridPoint, usize>,
    grid: CellGrid,
    frame: Option<FrameSpec>,
}

impl PartialEq for Polyomino {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.frame == other.frame
    }
}

impl Eq for Polyomino {}

impl Polyomino {
    /// Validates connectivity and derives vertices.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        let first = *cells.iter().next().ok_or(Error::EmptyCellSet)?;
        let mut seen = BTreeSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(c) = queue.pop_front() {
            for nb in c.neighbors() {
                if cells.contains(&nb) && seen.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        if let Some(stray) = cells.iter().find(|c| !seen.contains(c)) {
            return Err(Error::DisconnectedCells(first, *stray));
        }
        let mut vertices: Vec<GridPoint> = cells
            .iter()
            .flat_map(|c| c.corners())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        vertices.sort_by_key(|v| v.order_key());
        let index = vertices.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let grid = CellGrid::new(&cells);
        Ok(Polyomino { cells, vertices, index, grid, frame: None })
    }

    pub(crate) fn with_frame(mut self, spec: FrameSpec) -> Self {
        self.frame = Some(spec);
        self
    }

    pub fn frame(&self) -> Option<&FrameSpec> {
        self.frame.as_ref()
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn rank(&self) -> usize {
        self.cells.len()
    }

    /// Vertices ascending in the variable order.
    pub fn vertices(&self) -> &[GridPoint] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, v: GridPoint) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn has_vertex(&self, v: GridPoint) -> bool {
        self.index.contains_key(&v)
    }

    /// Lower-left and upper-right corners of the vertex bounding box.
    pub fn bounding_box(&self) -> (GridPoint, GridPoint) {
        let lo = self.grid.min;
        (lo, lo.offset(self.grid.width, self.grid.height))
    }

    /// Every cell with lower-left corner in `[lo, hi]` belongs to the polyomino.
    pub fn cells_full(&self, lo: GridPoint, hi: GridPoint) -> bool {
        self.grid.full(lo, hi)
    }

    /// `[a, b]` is proper and its whole cell interval lies in the polyomino.
    pub fn is_inner(&self, interval: &GridInterval) -> bool {
        interval.is_proper() && self.grid.full(interval.lo, interval.hi.offset(-1, -1))
    }

    /// Unit edge between two grid points, if both lie on a cell edge of the polyomino.
    pub fn has_unit_edge(&self, u: GridPoint, v: GridPoint) -> bool {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        if u.j == v.j && v.i == u.i + 1 {
            self.contains(Cell { llc: u }) || self.contains(Cell { llc: u.offset(0, -1) })
        } else if u.i == v.i && v.j == u.j + 1 {
            self.contains(Cell { llc: u }) || self.contains(Cell { llc: u.offset(-1, 0) })
        } else {
            false
        }
    }

    /// All unit edges, each as an ordered pair, sorted.
    pub fn edges(&self) -> Vec<(GridPoint, GridPoint)> {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            let [a, d, cc, b] = c.corners();
            out.insert((a, d));
            out.insert((a, cc));
            out.insert((cc, b));
            out.insert((d, b));
        }
        out.into_iter().collect()
    }

    pub fn classify_simplicity(&self) -> Simplicity {
        let (lo, hi) = self.bounding_box();
        // cells of the padded box have llc in [lo-1, hi]
        let (x0, y0, x1, y1) = (lo.i - 1, lo.j - 1, hi.i, hi.j);
        let inside = |c: Cell| c.llc.i >= x0 && c.llc.i <= x1 && c.llc.j >= y0 && c.llc.j <= y1;
        let mut outer = BTreeSet::new();
        let start = Cell::new(x0, y0);
        outer.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for nb in c.neighbors() {
                if inside(nb) && !self.contains(nb) && outer.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        let mut assigned = outer;
        let mut holes = Vec::new();
        for i in x0..=x1 {
            for j in y0..=y1 {
                let c = Cell::new(i, j);
                if self.contains(c) || assigned.contains(&c) {
                    continue;
                }
                let mut hole = BTreeSet::from([c]);
                assigned.insert(c);
                let mut queue = VecDeque::from([c]);
                while let Some(h) = queue.pop_front() {
                    for nb in h.neighbors() {
                        if inside(nb) && !self.contains(nb) && assigned.insert(nb) {
                            hole.insert(nb);
                            queue.push_back(nb);
                        }
                    }
                }
                holes.push(hole);
            }
        }
        holes.sort();
        Simplicity { simple: holes.is_empty(), holes }
    }

    /// All inner intervals, sorted by `lo` then `hi`.
    pub fn inner_intervals(&self) -> Vec<GridInterval> {
        let mut by_point: Vec<GridPoint> = self.vertices.clone();
        by_point.sort();
        let mut out = Vec::new();
        for &a in &by_point {
            for &b in &by_point {
                let iv = GridInterval { lo: a, hi: b };
                if a.i < b.i && a.j < b.j && self.is_inner(&iv) {
                    out.push(iv);
                }
            }
        }
        out
    }

    /// Maximal edge intervals of one orientation, sorted by line then start.
    pub fn maximal_edge_intervals(&self, orientation: Orientation) -> Vec<EdgeInterval> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let (lines, span) = match orientation {
            Orientation::Horizontal => (lo.j..=hi.j, lo.i..=hi.i),
            Orientation::Vertical => (lo.i..=hi.i, lo.j..=hi.j),
        };
        for line in lines {
            let point = |t: i32| match orientation {
                Orientation::Horizontal => GridPoint::new(t, line),
                Orientation::Vertical => GridPoint::new(line, t),
            };
            let mut start: Option<i32> = None;
            for t in span.clone() {
                let present = t < *span.end() && self.has_unit_edge(point(t), point(t + 1));
                match (present, start) {
                    (true, None) => start = Some(t),
                    (false, Some(s)) => {
                        out.push(EdgeInterval {
                            lo: point(s),
                            hi: point(t),
                            orientation,
                            maximal: true,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
        }
        out
    }

    /// The maximal edge interval of the given orientation through a vertex.
    pub fn maximal_edge_interval_through(
        &self,
        v: GridPoint,
        orientation: Orientation,
    ) -> Option<EdgeInterval> {
        if !self.has_vertex(v) {
            return None;
        }
        let step = match orientation {
            Orientation::Horizontal => (1, 0),
            Orientation::Vertical => (0, 1),
        };
        let mut lo = v;
        while self.has_unit_edge(lo.offset(-step.0, -step.1), lo) {
            lo = lo.offset(-step.0, -step.1);
        }
        let mut hi = v;
        while self.has_unit_edge(hi, hi.offset(step.0, step.1)) {
            hi = hi.offset(step.0, step.1);
        }
        (lo != hi).then_some(EdgeInterval { lo, hi, orientation, maximal: true })
    }

    /// The cell of the polyomino whose lower-right corner is `v`.
    pub fn lower_right_cell(&self, v: GridPoint) -> Option<Cell> {
        let c = Cell { llc: v.offset(-1, 0) };
        self.contains(c).then_some(c)
    }

    /// Cells translated so the bounding box starts at `(1, 1)`.
    pub fn normalized_cells(&self) -> Vec<Cell> {
        let (lo, _) = self.bounding_box();
        self.cells
            .iter()
            .map(|c| Cell { llc: c.llc.offset(1 - lo.i, 1 - lo.j) })
            .collect()
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", cells.join(","))
    }
}
