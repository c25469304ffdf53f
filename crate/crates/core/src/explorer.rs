//! Exhaustive generation of small polyominoes and frames, and the sweep
//! comparing h-polynomials with switching rook polynomials.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex;
use crate::error::{Budget, Error, Result};
use crate::families::{build_frame, north_east_paths, parallelogram_cells, FrameSpec};
use crate::grid::{Cell, GridPoint, Polyomino};
use crate::ideal;
use crate::poly::IntPolynomial;
use crate::rooks::{self, AttackPolicy};

/// Fixed polyominoes of rank at most `max_rank`, one per translation class,
/// with bounding box at `(1, 1)`, sorted by rank then cell list.
///
/// Redelmeier's method: grow from the origin into the half plane
/// `y > 0 or (y == 0 and x >= 0)`, never revisiting a cell once it has been
/// offered.
pub fn enumerate_fixed_polyominoes(max_rank: usize, budget: Budget) -> Result<Vec<Polyomino>> {
    fn grow(
        untried: &mut Vec<(i32, i32)>,
        poly: &mut Vec<(i32, i32)>,
        reached: &mut HashSet<(i32, i32)>,
        max: usize,
        out: &mut Vec<Vec<(i32, i32)>>,
        budget: Budget,
    ) -> Result<()> {
        while let Some(c) = untried.pop() {
            poly.push(c);
            budget.check("fixed polyominoes", out.len() as u128 + 1)?;
            out.push(poly.clone());
            if poly.len() < max {
                let mut added = Vec::new();
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let nb = (c.0 + dx, c.1 + dy);
                    if (nb.1 > 0 || (nb.1 == 0 && nb.0 >= 0)) && reached.insert(nb) {
                        added.push(nb);
                    }
                }
                let mut next = untried.clone();
                next.extend_from_slice(&added);
                grow(&mut next, poly, reached, max, out, budget)?;
                for a in added {
                    reached.remove(&a);
                }
            }
            poly.pop();
        }
        Ok(())
    }
    if max_rank == 0 {
        return Ok(Vec::new());
    }
    let mut raw = Vec::new();
    let mut reached = HashSet::from([(0, 0)]);
    grow(&mut vec![(0, 0)], &mut Vec::new(), &mut reached, max_rank, &mut raw, budget)?;
    let mut out: Vec<Polyomino> = raw
        .into_iter()
        .map(|cells| {
            let p = Polyomino::from_cells(cells.into_iter().map(|(x, y)| Cell::new(x, y)))?;
            Polyomino::from_cells(p.normalized_cells())
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| (a.rank(), a.cells()).cmp(&(b.rank(), b.cells())));
    Ok(out)
}

/// Every frame with `4 <= m <= max_m` and `4 <= n <= max_n`.
pub fn enumerate_small_frames(max_m: i32, max_n: i32) -> Vec<Polyomino> {
    let mut out = Vec::new();
    for m in 4..=max_m {
        for n in 4..=max_n {
            for a0 in 2..m {
                for ak in a0 + 1..m {
                    for b0 in 2..n {
                        for bk in b0 + 1..n {
                            let paths = north_east_paths(GridPoint::new(a0, b0), GridPoint::new(ak, bk));
                            for s1 in &paths {
                                for s2 in &paths {
                                    if parallelogram_cells(s1, s2).is_err() {
                                        continue;
                                    }
                                    let spec = FrameSpec::new(m, n, s1.clone(), s2.clone());
                                    out.push(build_frame(&spec).expect("validated frame spec"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Match,
    Mismatch,
    SkippedGroebner,
    SkippedBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationRecord {
    pub cells: Vec<Cell>,
    pub rank: usize,
    pub simple: bool,
    pub groebner: bool,
    pub dim_used: usize,
    pub h: Option<IntPolynomial>,
    pub r_tilde: Option<IntPolynomial>,
    pub status: SweepStatus,
}

fn explore_one(p: &Polyomino, policy: AttackPolicy, budget: Budget) -> ExplorationRecord {
    let mut rec = ExplorationRecord {
        cells: p.normalized_cells(),
        rank: p.rank(),
        simple: p.classify_simplicity().simple,
        groebner: false,
        dim_used: 0,
        h: None,
        r_tilde: None,
        status: SweepStatus::SkippedBudget,
    };
    let run = |rec: &mut ExplorationRecord| -> Result<()> {
        rec.groebner = ideal::is_groebner(p)?;
        rec.r_tilde = Some(rooks::switching_rook_polynomial(p, policy, budget)?);
        if !rec.groebner {
            rec.status = SweepStatus::SkippedGroebner;
            return Ok(());
        }
        let fs = complex::facets(p, budget)?;
        rec.dim_used = fs.iter().map(complex::Facet::len).max().unwrap_or(0);
        let f = complex::f_vector(p, budget)?;
        let h = complex::h_from_f(&f, rec.dim_used)?;
        rec.status = if Some(&h) == rec.r_tilde.as_ref() { SweepStatus::Match } else { SweepStatus::Mismatch };
        rec.h = Some(h);
        Ok(())
    };
    match run(&mut rec) {
        Ok(()) => {}
        Err(Error::BudgetExceeded { .. } | Error::TooLarge(_) | Error::Overflow(_)) => {
            rec.status = SweepStatus::SkippedBudget;
            rec.h = None;
        }
        Err(e) => panic!("sweep of {p} failed: {e}"),
    }
    rec
}

/// One record per input, in input order.
pub fn conjecture_sweep(polys: &[Polyomino], policy: AttackPolicy, budget: Budget) -> Vec<ExplorationRecord> {
    polys.par_iter().map(|p| explore_one(p, policy, budget)).collect()
}

pub fn summarize(records: &[ExplorationRecord]) -> BTreeMap<SweepStatus, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.status).or_insert(0) += 1;
    }
    out
}
