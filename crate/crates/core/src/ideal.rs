//! Inner 2-minors, the monomial order, an S-pair Gröbner oracle and a
//! congruence-class Hilbert function.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Budget, Error, Result};
use crate::grid::{GridInterval, GridPoint, Polyomino};
use crate::poly::IntPolynomial;
use crate::util::{binomial, UnionFind};

/// The binomial `x_a x_b - x_c x_d` of an inner interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InnerMinor {
    pub a: GridPoint,
    pub b: GridPoint,
    pub c: GridPoint,
    pub d: GridPoint,
    pub source: GridInterval,
}

impl InnerMinor {
    pub fn from_interval(source: GridInterval) -> Self {
        let (c, d) = source.anti_diagonal();
        InnerMinor { a: source.lo, b: source.hi, c, d, source }
    }

    pub fn diagonal_term(&self) -> Monomial {
        Monomial::new(vec![self.a, self.b])
    }

    pub fn anti_diagonal_term(&self) -> Monomial {
        Monomial::new(vec![self.c, self.d])
    }
}

impl fmt::Display for InnerMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}x{} - x{}x{}", self.a, self.b, self.c, self.d)
    }
}

/// A monomial as a multiset of variables, kept ascending in the variable order.
///
/// `Ord` is graded reverse lexicographic: on equal degree the monomial whose
/// ascending variable list is lexicographically smaller is smaller.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: Vec<GridPoint>,
}

impl Monomial {
    pub fn new(mut vars: Vec<GridPoint>) -> Self {
        vars.sort_by_key(|v| v.order_key());
        Monomial { vars }
    }

    pub fn vars(&self) -> &[GridPoint] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let a = self.vars.iter().map(|v| v.order_key());
            let b = other.vars.iter().map(|v| v.order_key());
            a.cmp(b)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.vars.iter().rev() {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

pub fn generators(p: &Polyomino) -> Vec<InnerMinor> {
    p.inner_intervals().into_iter().map(InnerMinor::from_interval).collect()
}

/// The anti-diagonal term, after checking it really is the larger one.
pub fn leading_monomial(g: &InnerMinor) -> Result<Monomial> {
    let lead = g.anti_diagonal_term();
    let trail = g.diagonal_term();
    if lead <= trail {
        return Err(Error::OrderContradiction(format!("{lead} is not above {trail}")));
    }
    Ok(lead)
}

/// Generators as pairs of sorted vertex-index pairs, with a lookup from
/// leading pairs to generator index. Vertex indices ascend with the order,
/// so sorted index vectors compare exactly like monomials.
struct IndexedBinomials {
    n: usize,
    lead: Vec<[usize; 2]>,
    trail: Vec<[usize; 2]>,
    by_lead: Vec<Option<u32>>,
}

impl IndexedBinomials {
    fn new(p: &Polyomino) -> Result<Self> {
        let n = p.num_vertices();
        let mut lead = Vec::new();
        let mut trail = Vec::new();
        let mut by_lead = vec![None; n * n];
        let idx = |v: GridPoint| p.vertex_index(v).expect("interval corners are vertices");
        for g in generators(p) {
            leading_monomial(&g)?;
            let l = sorted2(idx(g.c), idx(g.d));
            let t = sorted2(idx(g.a), idx(g.b));
            by_lead[l[0] * n + l[1]] = Some(lead.len() as u32);
            lead.push(l);
            trail.push(t);
        }
        Ok(IndexedBinomials { n, lead, trail, by_lead })
    }

    fn lookup(&self, u: usize, v: usize) -> Option<usize> {
        let [u, v] = sorted2(u, v);
        self.by_lead[u * self.n + v].map(|g| g as usize)
    }

    /// One rewrite step on a sorted monomial, using the first generator whose
    /// leading pair divides it.
    fn rewrite(&self, m: &[usize]) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize, usize)> = None;
        for p in 0..m.len() {
            for q in p + 1..m.len() {
                if let Some(g) = self.lookup(m[p], m[q]) {
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, p, q));
                    }
                }
            }
        }
        let (g, p, q) = best?;
        let mut out: Vec<usize> = m
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != p && t != q)
            .map(|(_, &v)| v)
            .collect();
        out.extend_from_slice(&self.trail[g]);
        out.sort_unstable();
        Some(out)
    }

    /// Reduces `u - v`; true iff the remainder is zero.
    fn reduces_to_zero(&self, mut u: Vec<usize>, mut v: Vec<usize>) -> bool {
        loop {
            match u.cmp(&v) {
                Ordering::Equal => return true,
                Ordering::Less => std::mem::swap(&mut u, &mut v),
                Ordering::Greater => {}
            }
            match self.rewrite(&u) {
                Some(next) => u = next,
                None => return false,
            }
        }
    }
}

fn sorted2(u: usize, v: usize) -> [usize; 2] {
    if u <= v {
        [u, v]
    } else {
        [v, u]
    }
}

fn sorted3(mut m: [usize; 3]) -> Vec<usize> {
    m.sort_unstable();
    m.to_vec()
}

/// Buchberger's criterion on the inner 2-minors. Pairs with coprime leading
/// terms are skipped; every other pair shares exactly one variable.
pub fn is_groebner(p: &Polyomino) -> Result<bool> {
    let g = IndexedBinomials::new(p)?;
    for i in 0..g.lead.len() {
        for j in i + 1..g.lead.len() {
            let (l1, l2) = (g.lead[i], g.lead[j]);
            let shared = l1.iter().find(|v| l2.contains(v));
            let Some(&y) = shared else { continue };
            let u1 = if l1[0] == y { l1[1] } else { l1[0] };
            let u2 = if l2[0] == y { l2[1] } else { l2[0] };
            let s1 = sorted3([u2, g.trail[i][0], g.trail[i][1]]);
            let s2 = sorted3([u1, g.trail[j][0], g.trail[j][1]]);
            if !g.reduces_to_zero(s1, s2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of degree-`k` monomials in `n` variables.
fn monomial_count(n: usize, k: usize) -> u128 {
    let (n, k) = (n as u128, k as u128);
    if n == 0 {
        return (k == 0) as u128;
    }
    let mut c: u128 = 1;
    for t in 0..k {
        c = c * (n + t) / (t + 1);
    }
    c
}

/// Ranks of non-decreasing index sequences (combinatorial number system on
/// `c_t = a_t + t`).
struct MultisetRanker {
    table: Vec<Vec<u64>>,
}

impl MultisetRanker {
    fn new(n: usize, k: usize) -> Self {
        let top = n + k;
        let table = (0..=top)
            .map(|x| (0..=k).map(|t| binomial(x as i64, t as i64).unwrap_or(0) as u64).collect())
            .collect();
        MultisetRanker { table }
    }

    fn rank(&self, m: &[usize]) -> usize {
        m.iter().enumerate().map(|(t, &a)| self.table[a + t][t + 1]).sum::<u64>() as usize
    }
}

/// Degree-`k` piece of the quotient: classes of degree-`k` monomials under
/// the swaps `x_c x_d <-> x_a x_b`.
pub fn hilbert_function(p: &Polyomino, k: usize, budget: Budget) -> Result<u64> {
    let n = p.num_vertices();
    let total = monomial_count(n, k);
    budget.check("degree-k monomials", total)?;
    if k < 2 {
        return Ok(total as u64);
    }
    let g = IndexedBinomials::new(p)?;
    let ranker = MultisetRanker::new(n, k);
    let mut uf = UnionFind::new(total as usize);
    let mut m = vec![0usize; k];
    let mut swapped = Vec::with_capacity(k);
    loop {
        let r = ranker.rank(&m);
        for a in 0..k {
            for b in a + 1..k {
                if m[a] == m[b] {
                    continue;
                }
                if let Some(gi) = g.lookup(m[a], m[b]) {
                    swapped.clear();
                    swapped.extend(m.iter().enumerate().filter(|&(t, _)| t != a && t != b).map(|(_, &v)| v));
                    swapped.extend_from_slice(&g.trail[gi]);
                    swapped.sort_unstable();
                    uf.union(r, ranker.rank(&swapped));
                }
            }
        }
        // next non-decreasing sequence
        let Some(pos) = (0..k).rev().find(|&t| m[t] + 1 < n) else { break };
        let v = m[pos] + 1;
        for slot in &mut m[pos..] {
            *slot = v;
        }
    }
    Ok(uf.components() as u64)
}

/// The h-vector from Hilbert values `H(0..)` for Krull dimension `d`,
/// requiring the last three computed coefficients to vanish.
pub fn h_from_hilbert_values(values: &[u64], d: usize) -> Result<IntPolynomial> {
    let mut h = Vec::with_capacity(values.len());
    for i in 0..values.len() {
        let mut acc: i64 = 0;
        for j in 0..=i {
            let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
            let term = binomial(d as i64, (i - j) as i64)?
                .checked_mul(values[j] as i64)
                .ok_or(Error::Overflow("h from Hilbert values"))?;
            acc = acc.checked_add(sign * term).ok_or(Error::Overflow("h from Hilbert values"))?;
        }
        h.push(acc);
    }
    let tail = &h[h.len().saturating_sub(3)..];
    if tail.iter().any(|&c| c != 0) {
        return Err(Error::UnstableTail(tail.to_vec()));
    }
    Ok(IntPolynomial::new(h))
}

pub fn h_from_hilbert(p: &Polyomino, d: usize, maxdeg: usize, budget: Budget) -> Result<IntPolynomial> {
    let values = (0..=maxdeg)
        .map(|k| hilbert_function(p, k, budget))
        .collect::<Result<Vec<_>>>()?;
    h_from_hilbert_values(&values, d)
}

pub fn krull_dimension_frame(p: &Polyomino) -> Result<usize> {
    p.frame().ok_or(Error::NotAFrame)?;
    Ok(p.num_vertices() - p.rank())
}
