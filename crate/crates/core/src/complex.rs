//! The simplicial complex of the initial ideal: attack pairs, facets, steps,
//! the descending facet order, shelling checks and h-vectors.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::families::{decompose_frame, descent_cells};
use crate::grid::{vertex_exceeds, GridPoint, Orientation, Polyomino};
use crate::poly::IntPolynomial;
use crate::util::{binomial, bits, bits_desc};

/// Non-faces of the complex: anti-diagonal corner pairs of inner intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackGraph {
    pub vertices: Vec<GridPoint>,
    pub edges: Vec<(GridPoint, GridPoint)>,
    adj: Vec<u128>,
}

impl AttackGraph {
    pub fn attacks(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> u128 {
        self.adj[u]
    }

    fn full_mask(&self) -> u128 {
        low_mask(self.vertices.len())
    }

    fn is_independent(&self, mask: u128) -> bool {
        bits(mask).all(|v| self.adj[v] & mask == 0)
    }

    fn is_maximal_independent(&self, mask: u128) -> bool {
        self.is_independent(mask)
            && bits(self.full_mask() & !mask).all(|v| self.adj[v] & mask != 0)
    }
}

fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub fn attack_graph(p: &Polyomino) -> Result<AttackGraph> {
    let n = p.num_vertices();
    if n > 128 {
        return Err(Error::TooLarge("vertex set"));
    }
    let mut adj = vec![0u128; n];
    let mut edges = BTreeSet::new();
    for iv in p.inner_intervals() {
        let (c, d) = iv.anti_diagonal();
        let (ci, di) = (p.vertex_index(c).unwrap(), p.vertex_index(d).unwrap());
        adj[ci] |= 1 << di;
        adj[di] |= 1 << ci;
        edges.insert(if c <= d { (c, d) } else { (d, c) });
    }
    Ok(AttackGraph { vertices: p.vertices().to_vec(), edges: edges.into_iter().collect(), adj })
}

/// A facet, held as its vertices in descending variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<GridPoint>", into = "Vec<GridPoint>")]
pub struct Facet {
    sorted: Vec<GridPoint>,
}

impl Facet {
    pub fn new(mut points: Vec<GridPoint>) -> Self {
        points.sort_by_key(|v| std::cmp::Reverse(v.order_key()));
        points.dedup();
        Facet { sorted: points }
    }

    pub fn sorted(&self) -> &[GridPoint] {
        &self.sorted
    }

    pub fn verts(&self) -> BTreeSet<GridPoint> {
        self.sorted.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, v: GridPoint) -> bool {
        self.sorted.contains(&v)
    }

    fn from_mask(p: &Polyomino, mask: u128) -> Self {
        Facet { sorted: bits_desc(mask).map(|v| p.vertices()[v]).collect() }
    }

    /// Bit mask over the vertex indices of `p`.
    pub fn mask(&self, p: &Polyomino) -> Result<u128> {
        let mut mask = 0u128;
        for &v in &self.sorted {
            let i = p.vertex_index(v).ok_or(Error::NotAFacet)?;
            if i >= 128 {
                return Err(Error::TooLarge("vertex set"));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }
}

impl From<Vec<GridPoint>> for Facet {
    fn from(points: Vec<GridPoint>) -> Self {
        Facet::new(points)
    }
}

impl From<Facet> for Vec<GridPoint> {
    fn from(f: Facet) -> Self {
        f.sorted
    }
}

/// Three facet vertices `left = (a, j)`, `corner = (i, j)`, `top = (i, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub left: GridPoint,
    pub corner: GridPoint,
    pub top: GridPoint,
}

/// Facet masks sorted descending, which is the shelling order.
fn facet_masks(g: &AttackGraph, budget: Budget) -> Result<Vec<u128>> {
    let non_adj: Vec<u128> = (0..g.vertices.len())
        .map(|v| g.full_mask() & !g.adj[v] & !(1u128 << v))
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0u128, g.full_mask(), 0u128)];
    while let Some((r, mut cand, mut excl)) = stack.pop() {
        if cand == 0 && excl == 0 {
            budget.check("facets", out.len() as u128 + 1)?;
            out.push(r);
            continue;
        }
        let pivot = bits(cand | excl)
            .max_by_key(|&u| ((cand & non_adj[u]).count_ones(), u))
            .unwrap();
        for v in bits_desc(cand & !non_adj[pivot]) {
            stack.push((r | 1 << v, cand & non_adj[v], excl & non_adj[v]));
            cand &= !(1u128 << v);
            excl |= 1u128 << v;
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Maximal independent sets of the attack graph, first facet of the
/// shelling order first.
pub fn facets(p: &Polyomino, budget: Budget) -> Result<Vec<Facet>> {
    let g = attack_graph(p)?;
    Ok(facet_masks(&g, budget)?.into_iter().map(|m| Facet::from_mask(p, m)).collect())
}

/// Every unit segment from `a` to `b` along a row or column is an edge of `p`.
fn on_edges(p: &Polyomino, a: GridPoint, b: GridPoint) -> bool {
    let (di, dj) = ((b.i - a.i).signum(), (b.j - a.j).signum());
    let mut cur = a;
    while cur != b {
        let next = cur.offset(di, dj);
        if !p.has_unit_edge(cur, next) {
            return false;
        }
        cur = next;
    }
    true
}

/// Triples meeting every step condition except possibly the lower-right
/// corner one. The row segment and the column segment of a step must run
/// along edges of `p`, so neither crosses a hole.
pub fn corner_candidates(p: &Polyomino, f: &Facet) -> Vec<Step> {
    let verts: HashSet<GridPoint> = f.sorted.iter().copied().collect();
    let mut out = Vec::new();
    for &w in &f.sorted {
        let left = verts.iter().filter(|v| v.j == w.j && v.i < w.i).max_by_key(|v| v.i);
        let top = verts.iter().filter(|v| v.i == w.i && v.j > w.j).min_by_key(|v| v.j);
        if let (Some(&left), Some(&top)) = (left, top) {
            if on_edges(p, left, w) && on_edges(p, w, top) {
                out.push(Step { left, corner: w, top });
            }
        }
    }
    out.sort_by_key(|s| s.corner.order_key());
    out
}

fn steps_unchecked(p: &Polyomino, f: &Facet) -> Vec<Step> {
    corner_candidates(p, f)
        .into_iter()
        .filter(|s| p.lower_right_cell(s.corner).is_some())
        .collect()
}

pub fn is_facet(p: &Polyomino, f: &Facet) -> Result<bool> {
    let g = attack_graph(p)?;
    match f.mask(p) {
        Ok(mask) => Ok(g.is_maximal_independent(mask)),
        Err(Error::NotAFacet) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Steps of a facet, ordered by corner ascending.
pub fn steps_of(p: &Polyomino, f: &Facet) -> Result<Vec<Step>> {
    if !is_facet(p, f)? {
        return Err(Error::NotAFacet);
    }
    Ok(steps_unchecked(p, f))
}

/// Candidate corners rejected because no cell of `p` has them as lower-right corner.
pub fn non_step_corners(p: &Polyomino, f: &Facet) -> Vec<GridPoint> {
    corner_candidates(p, f)
        .into_iter()
        .filter(|s| p.lower_right_cell(s.corner).is_none())
        .map(|s| s.corner)
        .collect()
}

/// `g` comes before `f` in the descending order.
pub fn facet_precedes(g: &Facet, f: &Facet) -> Result<bool> {
    if g.len() != f.len() {
        return Err(Error::CardinalityMismatch(g.len(), f.len()));
    }
    Ok(g.sorted
        .iter()
        .zip(&f.sorted)
        .find(|(a, b)| a != b)
        .is_some_and(|(a, b)| vertex_exceeds(*a, *b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellingReport {
    pub order: Vec<Facet>,
    pub restriction_counts: Vec<usize>,
    pub step_counts: Vec<usize>,
    pub intersection_ok: Vec<bool>,
    pub h_shelling: IntPolynomial,
}

pub fn shelling_verify(p: &Polyomino, budget: Budget) -> Result<ShellingReport> {
    let g = attack_graph(p)?;
    let masks = facet_masks(&g, budget)?;
    budget.check("facet pairs", (masks.len() as u128).pow(2) / 2)?;
    let d = masks[0].count_ones();
    if masks.iter().any(|m| m.count_ones() != d) {
        return Err(Error::NotPure);
    }
    let order: Vec<Facet> = masks.iter().map(|&m| Facet::from_mask(p, m)).collect();
    let step_counts: Vec<usize> = order.iter().map(|f| steps_unchecked(p, f).len()).collect();
    let rows = (1..masks.len())
        .into_par_iter()
        .map(|j| {
            let fj = masks[j];
            let inter: BTreeSet<u128> = masks[..j].iter().map(|&fi| fi & fj).collect();
            let codim1: Vec<u128> =
                inter.iter().copied().filter(|m| m.count_ones() + 1 == d).collect();
            if inter.iter().any(|&m| !codim1.iter().any(|&c| m & !c == 0)) {
                return Err(Error::NotShellable(j));
            }
            let expected: BTreeSet<u128> = steps_unchecked(p, &order[j])
                .iter()
                .map(|s| fj & !(1u128 << p.vertex_index(s.corner).unwrap()))
                .collect();
            let found: BTreeSet<u128> = codim1.iter().copied().collect();
            Ok((codim1.len(), found == expected))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut restriction_counts = vec![0];
    let mut intersection_ok = vec![step_counts[0] == 0];
    for (r, ok) in rows {
        restriction_counts.push(r);
        intersection_ok.push(ok);
    }
    let h_shelling = IntPolynomial::from_histogram(restriction_counts.iter().copied());
    Ok(ShellingReport { order, restriction_counts, step_counts, intersection_ok, h_shelling })
}

/// Histogram of step counts over all facets.
pub fn h_from_steps(p: &Polyomino, budget: Budget) -> Result<IntPolynomial> {
    let fs = facets(p, budget)?;
    Ok(IntPolynomial::from_histogram(fs.iter().map(|f| steps_unchecked(p, f).len())))
}

/// `(f_{-1}, f_0, ..., f_dim)`.
pub fn f_vector(p: &Polyomino, budget: Budget) -> Result<Vec<u64>> {
    let g = attack_graph(p)?;
    let mut f = vec![0u64; g.vertices.len() + 1];
    let mut visited: u128 = 0;
    let mut stack = vec![(0usize, g.full_mask())];
    while let Some((size, cand)) = stack.pop() {
        f[size] += 1;
        visited += 1;
        budget.check("faces", visited)?;
        for v in bits(cand) {
            let above = !low_mask(v + 1);
            stack.push((size + 1, cand & above & !g.adj[v]));
        }
    }
    while f.len() > 1 && f.last() == Some(&0) {
        f.pop();
    }
    Ok(f)
}

pub fn h_from_f(f: &[u64], d: usize) -> Result<IntPolynomial> {
    if f.len() != d + 1 || f.first() != Some(&1) {
        return Err(Error::InconsistentDimension { len: f.len(), d });
    }
    let mut h = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc: i64 = 0;
        for i in 0..=k {
            let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
            let term = binomial((d - i) as i64, (k - i) as i64)?
                .checked_mul(f[i] as i64)
                .ok_or(Error::Overflow("h from f"))?;
            acc = acc.checked_add(sign * term).ok_or(Error::Overflow("h from f"))?;
        }
        h.push(acc);
    }
    Ok(IntPolynomial::new(h))
}

/// Number of degree-`k` monomials supported on a face.
pub fn face_count_hilbert(f: &[u64], k: usize) -> Result<u64> {
    if k == 0 {
        return Ok(1);
    }
    let mut acc: u64 = 0;
    for (i, &fi) in f.iter().enumerate().skip(1) {
        let c = binomial(k as i64 - 1, i as i64 - 1)? as u64;
        acc = c
            .checked_mul(fi)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow("face-count Hilbert function"))?;
    }
    Ok(acc)
}

/// Every maximal edge interval contains a vertex of `f`.
pub fn meets_every_edge_interval(p: &Polyomino, f: &Facet) -> bool {
    [Orientation::Horizontal, Orientation::Vertical].into_iter().all(|o| {
        p.maximal_edge_intervals(o)
            .iter()
            .all(|iv| f.sorted.iter().any(|&v| iv.contains(v)))
    })
}

/// Every step spans an inner interval from its left vertex to its top vertex.
pub fn steps_span_inner_intervals(p: &Polyomino, f: &Facet) -> Result<bool> {
    Ok(steps_of(p, f)?.iter().all(|s| {
        crate::grid::GridInterval::new(s.left, s.top)
            .map(|iv| p.is_inner(&iv))
            .unwrap_or(false)
    }))
}

/// A facet of a frame split into the two corner boxes and the two bands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourChains {
    pub chains: [Vec<GridPoint>; 4],
    pub descents: [usize; 4],
}

impl FourChains {
    pub fn total_descents(&self) -> usize {
        self.descents.iter().sum()
    }

    pub fn all_chains(&self) -> bool {
        self.chains.iter().all(|c| c.windows(2).all(|w| w[0].le(w[1])))
    }
}

pub fn four_chains(p: &Polyomino, f: &Facet) -> Result<FourChains> {
    let spec = p.frame().ok_or(Error::NotAFrame)?;
    let dec = decompose_frame(p)?;
    let mut chains: [Vec<GridPoint>; 4] = Default::default();
    for &v in &f.sorted {
        let slot = if spec.in_lower_box(v) {
            0
        } else if spec.in_upper_box(v) {
            3
        } else if dec.p1.has_vertex(v) {
            1
        } else {
            2
        };
        chains[slot].push(v);
    }
    for c in &mut chains {
        c.sort();
    }
    let descents = std::array::from_fn(|t| descent_cells(p, &chains[t]).len());
    Ok(FourChains { chains, descents })
}
