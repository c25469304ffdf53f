//! Brute-force oracles shared by the integration tests.
//!
//! Everything here works straight from cell sets and small loops, with no
//! use of the library's enumeration code, so that agreement is meaningful.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use polyrook::families::{build_frame, FrameSpec, NorthEastPath};
use polyrook::{Cell, GridPoint, Polyomino};

pub fn poly(cells: &[(i32, i32)]) -> Polyomino {
    Polyomino::from_cells(cells.iter().map(|&(i, j)| Cell::new(i, j))).unwrap()
}

pub fn pts(v: &[(i32, i32)]) -> Vec<GridPoint> {
    v.iter().map(|&(i, j)| GridPoint::new(i, j)).collect()
}

pub fn c1() -> Polyomino {
    poly(&[(1, 1)])
}

/// Square of 2×2 cells.
pub fn q2() -> Polyomino {
    poly(&[(1, 1), (2, 1), (1, 2), (2, 2)])
}

/// Square annulus of side `n` cells with a hole of side `n - 2`.
pub fn ring(n: i32) -> Polyomino {
    let mut cells = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == 1 || j == 1 || i == n || j == n {
                cells.push((i, j));
            }
        }
    }
    poly(&cells)
}

pub fn p4() -> Polyomino {
    ring(3)
}

pub fn p5() -> Polyomino {
    ring(4)
}

fn path(v: &[(i32, i32)]) -> NorthEastPath {
    NorthEastPath::from_pairs(v).unwrap()
}

/// P4 built as a frame, carrying its frame parameters.
pub fn p4_frame() -> Polyomino {
    build_frame(&FrameSpec::new(4, 4, path(&[(2, 2), (2, 3), (3, 3)]), path(&[(2, 2), (3, 2), (3, 3)]))).unwrap()
}

pub fn p5_frame() -> Polyomino {
    let s1 = path(&[(2, 2), (2, 3), (2, 4), (3, 4), (4, 4)]);
    let s2 = path(&[(2, 2), (3, 2), (4, 2), (4, 3), (4, 4)]);
    build_frame(&FrameSpec::new(5, 5, s1, s2)).unwrap()
}

pub fn cell_set(p: &Polyomino) -> BTreeSet<(i32, i32)> {
    p.cells().iter().map(|c| (c.llc.i, c.llc.j)).collect()
}

pub fn vertex_set(p: &Polyomino) -> Vec<(i32, i32)> {
    let mut v = BTreeSet::new();
    for (i, j) in cell_set(p) {
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            v.insert((i + a, j + b));
        }
    }
    v.into_iter().collect()
}

fn box_full(cells: &BTreeSet<(i32, i32)>, lo: (i32, i32), hi: (i32, i32)) -> bool {
    (lo.0..hi.0).all(|i| (lo.1..hi.1).all(|j| cells.contains(&(i, j))))
}

/// Anti-diagonal corners of an interval whose cells all lie in `p`.
pub fn vertices_attack(cells: &BTreeSet<(i32, i32)>, u: (i32, i32), v: (i32, i32)) -> bool {
    let (l, r) = if u.0 < v.0 { (u, v) } else { (v, u) };
    l.0 < r.0 && l.1 > r.1 && box_full(cells, (l.0, r.1), (r.0, l.1))
}

/// All inner intervals as (lower-left, upper-right) pairs.
pub fn inner_intervals(p: &Polyomino) -> BTreeSet<((i32, i32), (i32, i32))> {
    let cells = cell_set(p);
    let vs = vertex_set(p);
    let mut out = BTreeSet::new();
    for &a in &vs {
        for &b in &vs {
            if a.0 < b.0 && a.1 < b.1 && box_full(&cells, a, b) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Every face of the complex whose non-faces are attacking vertex pairs.
pub fn faces(p: &Polyomino) -> Vec<Vec<(i32, i32)>> {
    let cells = cell_set(p);
    let vs = vertex_set(p);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        t: usize,
        vs: &[(i32, i32)],
        cells: &BTreeSet<(i32, i32)>,
        cur: &mut Vec<(i32, i32)>,
        out: &mut Vec<Vec<(i32, i32)>>,
    ) {
        if t == vs.len() {
            out.push(cur.clone());
            return;
        }
        rec(t + 1, vs, cells, cur, out);
        if cur.iter().all(|&u| !vertices_attack(cells, u, vs[t])) {
            cur.push(vs[t]);
            rec(t + 1, vs, cells, cur, out);
            cur.pop();
        }
    }
    rec(0, &vs, &cells, &mut cur, &mut out);
    out
}

/// Maximal faces, ordered with the larger vertex set first, where larger
/// means the greatest vertex of the symmetric difference (by row, then
/// column) belongs to it.
pub fn facets(p: &Polyomino) -> Vec<BTreeSet<(i32, i32)>> {
    let cells = cell_set(p);
    let vs = vertex_set(p);
    let mut maximal: Vec<BTreeSet<(i32, i32)>> = faces(p)
        .into_iter()
        .filter(|f| {
            vs.iter().all(|v| f.contains(v) || f.iter().any(|&u| vertices_attack(&cells, u, *v)))
        })
        .map(|f| f.into_iter().collect())
        .collect();
    maximal.sort_by_key(|f| std::cmp::Reverse(desc_key(f)));
    maximal
}

fn desc_key(f: &BTreeSet<(i32, i32)>) -> Vec<(i32, i32)> {
    let mut k: Vec<(i32, i32)> = f.iter().map(|&(i, j)| (j, i)).collect();
    k.sort_by(|a, b| b.cmp(a));
    k
}

pub fn to_points(f: &BTreeSet<(i32, i32)>) -> BTreeSet<GridPoint> {
    f.iter().map(|&(i, j)| GridPoint::new(i, j)).collect()
}

/// f-vector with the empty face first.
pub fn f_vector(p: &Polyomino) -> Vec<u64> {
    let mut f = Vec::new();
    for face in faces(p) {
        if f.len() <= face.len() {
            f.resize(face.len() + 1, 0);
        }
        f[face.len()] += 1;
    }
    f
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expands the sum over faces of t^|F| (1 - t)^(d - |F|).
pub fn h_from_f(f: &[u64], d: usize) -> Vec<i64> {
    let mut h = vec![0i64; d + 1];
    for (i, &c) in f.iter().enumerate() {
        let mut term = vec![0i64; i + 1];
        term[i] = c as i64;
        for _ in i..d {
            term = poly_mul(&term, &[1, -1]);
        }
        for (k, x) in term.into_iter().enumerate() {
            h[k] += x;
        }
    }
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// Restriction sizes along the facet order: the vertices of F_j whose
/// removal leaves a face of an earlier facet. Panics if the order is not a
/// shelling.
pub fn restriction_counts(fs: &[BTreeSet<(i32, i32)>]) -> Vec<usize> {
    let mut out = Vec::new();
    for (j, fj) in fs.iter().enumerate() {
        let restriction: Vec<(i32, i32)> = fj
            .iter()
            .copied()
            .filter(|&v| {
                let mut rest = fj.clone();
                rest.remove(&v);
                fs[..j].iter().any(|g| rest.is_subset(g))
            })
            .collect();
        for fi in &fs[..j] {
            let meet: BTreeSet<_> = fi.intersection(fj).copied().collect();
            assert!(
                restriction.iter().any(|v| !meet.contains(v)),
                "facet {j} meets an earlier facet outside the codimension one faces"
            );
        }
        out.push(restriction.len());
    }
    out
}

pub fn histogram(values: impl IntoIterator<Item = usize>) -> Vec<i64> {
    let mut h = Vec::new();
    for v in values {
        if h.len() <= v {
            h.resize(v + 1, 0);
        }
        h[v] += 1;
    }
    h
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

/// Number of degree `k` monomials supported on a face.
pub fn face_hilbert(f: &[u64], k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    f.iter().enumerate().skip(1).map(|(i, &c)| c * binom(k as u64 - 1, i as u64 - 1)).sum()
}

fn rooks_attack(cells: &BTreeSet<(i32, i32)>, a: (i32, i32), b: (i32, i32), line: bool) -> bool {
    if a.0 == b.0 {
        line || (a.1.min(b.1)..=a.1.max(b.1)).all(|j| cells.contains(&(a.0, j)))
    } else if a.1 == b.1 {
        line || (a.0.min(b.0)..=a.0.max(b.0)).all(|i| cells.contains(&(i, a.1)))
    } else {
        false
    }
}

/// Non-attacking rook placements with `k` rooks, each sorted.
pub fn rook_placements(p: &Polyomino, k: usize, line: bool) -> Vec<Vec<(i32, i32)>> {
    let cells = cell_set(p);
    let list: Vec<(i32, i32)> = cells.iter().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        t: usize,
        k: usize,
        list: &[(i32, i32)],
        cells: &BTreeSet<(i32, i32)>,
        line: bool,
        cur: &mut Vec<(i32, i32)>,
        out: &mut Vec<Vec<(i32, i32)>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in t..list.len() {
            if cur.iter().all(|&c| !rooks_attack(cells, c, list[s], line)) {
                cur.push(list[s]);
                rec(s + 1, k, list, cells, line, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, k, &list, &cells, line, &mut cur, &mut out);
    out
}

pub fn rook_counts(p: &Polyomino, line: bool) -> Vec<i64> {
    (0..)
        .map(|k| rook_placements(p, k, line).len() as i64)
        .take_while(|&c| c > 0)
        .collect()
}

/// Orbits of `k`-placements under switches inside full rectangles.
pub fn switch_class_count(p: &Polyomino, k: usize, line: bool) -> usize {
    let cells = cell_set(p);
    let configs = rook_placements(p, k, line);
    let index: HashMap<Vec<(i32, i32)>, usize> = configs.iter().cloned().enumerate().map(|(t, c)| (c, t)).collect();
    let mut parent: Vec<usize> = (0..configs.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    for (t, cfg) in configs.iter().enumerate() {
        for a in 0..cfg.len() {
            for b in a + 1..cfg.len() {
                let (x, y) = (cfg[a], cfg[b]);
                if x.0 == y.0 || x.1 == y.1 {
                    continue;
                }
                let lo = (x.0.min(y.0), x.1.min(y.1));
                let hi = (x.0.max(y.0) + 1, x.1.max(y.1) + 1);
                if !box_full(&cells, lo, hi) {
                    continue;
                }
                let mut next: Vec<(i32, i32)> = cfg.iter().copied().filter(|&c| c != x && c != y).collect();
                next.push((x.0, y.1));
                next.push((y.0, x.1));
                next.sort();
                let u = index[&next];
                let (ra, rb) = (root(&mut parent, t), root(&mut parent, u));
                parent[ra] = rb;
            }
        }
    }
    (0..configs.len()).filter(|&t| root(&mut parent, t) == t).count()
}

pub fn switching_counts(p: &Polyomino, line: bool) -> Vec<i64> {
    (0..)
        .map(|k| switch_class_count(p, k, line) as i64)
        .take_while(|&c| c > 0)
        .collect()
}

fn connected(cells: &BTreeSet<(i32, i32)>) -> bool {
    let Some(&start) = cells.iter().next() else { return false };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some((i, j)) = stack.pop() {
        for n in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
            if cells.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// Fixed polyominoes of the given rank by trying every subset of a
/// `rank × rank` box that touches both lower edges.
pub fn fixed_polyomino_count(rank: usize) -> usize {
    let side = rank as i32;
    let slots: Vec<(i32, i32)> = (0..side).flat_map(|i| (0..side).map(move |j| (i, j))).collect();
    let mut count = 0;
    let mut chosen = Vec::new();
    fn rec(t: usize, rank: usize, slots: &[(i32, i32)], chosen: &mut Vec<(i32, i32)>, count: &mut usize) {
        if chosen.len() == rank {
            let set: BTreeSet<(i32, i32)> = chosen.iter().copied().collect();
            let touches = set.iter().any(|c| c.0 == 0) && set.iter().any(|c| c.1 == 0);
            if touches && connected(&set) {
                *count += 1;
            }
            return;
        }
        if slots.len() - t < rank - chosen.len() {
            return;
        }
        chosen.push(slots[t]);
        rec(t + 1, rank, slots, chosen, count);
        chosen.pop();
        rec(t + 1, rank, slots, chosen, count);
    }
    rec(0, rank, &slots, &mut chosen, &mut count);
    count
}

/// Grows a connected cell set from `(1, 1)`, each choice picking one
/// neighbouring free cell.
pub fn grow(choices: &[u32]) -> Polyomino {
    let mut cells = BTreeSet::from([(1, 1)]);
    for &c in choices {
        let mut frontier: BTreeSet<(i32, i32)> = BTreeSet::new();
        for &(i, j) in &cells {
            for n in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if !cells.contains(&n) {
                    frontier.insert(n);
                }
            }
        }
        let pick = *frontier.iter().nth(c as usize % frontier.len()).unwrap();
        cells.insert(pick);
    }
    poly(&cells.into_iter().collect::<Vec<_>>())
}
