//! The map from facets of a frame to canonical rook configurations, its
//! bijectivity check, and end-to-end theorem reports.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{self, Facet, Step};
use crate::error::{Budget, Error, Result};
use crate::grid::{Cell, GridPoint, Orientation, Polyomino};
use crate::ideal;
use crate::poly::IntPolynomial;
use crate::rooks::{self, AttackPolicy, RookConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Collision {
    None,
    Horizontal,
    Vertical,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiAssignment {
    pub corner: GridPoint,
    pub cell: Cell,
    pub relocated: bool,
    pub collision: Collision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiTrace {
    pub facet: Facet,
    pub assignments: Vec<PsiAssignment>,
}

fn partner(
    p: &Polyomino,
    corners: &[GridPoint],
    w: GridPoint,
    orientation: Orientation,
) -> Result<Option<GridPoint>> {
    let Some(line) = p.maximal_edge_interval_through(w, orientation) else {
        return Ok(None);
    };
    let others: Vec<GridPoint> = corners.iter().copied().filter(|&v| v != w && line.contains(v)).collect();
    match others.as_slice() {
        [] => Ok(None),
        [v] => Ok(Some(*v)),
        _ => Err(Error::LemmaViolation(format!("three step corners share the edge interval through {w}"))),
    }
}

fn cell_with_lower_right(p: &Polyomino, v: GridPoint) -> Result<Cell> {
    p.lower_right_cell(v)
        .ok_or_else(|| Error::LemmaViolation(format!("no cell has lower-right corner {v}")))
}

/// Places one rook per step corner, moving the box-side corner of each
/// colliding pair to row `b0` or column `ak`.
pub fn psi(p: &Polyomino, f: &Facet) -> Result<(RookConfig, PsiTrace)> {
    let spec = p.frame().ok_or(Error::NotAFrame)?;
    let steps: Vec<Step> = complex::steps_of(p, f)?;
    let corners: Vec<GridPoint> = steps.iter().map(|s| s.corner).collect();
    let mut assignments = Vec::with_capacity(corners.len());
    for &w in &corners {
        let h = partner(p, &corners, w, Orientation::Horizontal)?;
        let v = partner(p, &corners, w, Orientation::Vertical)?;
        let mut target = w;
        let mut relocations = 0;
        if let Some(o) = h {
            let (left, right) = if w.i < o.i { (w, o) } else { (o, w) };
            if !spec.in_lower_box(left) || spec.in_lower_box(right) {
                return Err(Error::LemmaViolation(format!(
                    "horizontal pair {left}, {right} is not split by the lower box"
                )));
            }
            if w == left {
                target = GridPoint::new(w.i, spec.b0());
                relocations += 1;
            }
        }
        if let Some(o) = v {
            let (low, high) = if w.j < o.j { (w, o) } else { (o, w) };
            if !spec.in_upper_box(high) || spec.in_upper_box(low) {
                return Err(Error::LemmaViolation(format!(
                    "vertical pair {low}, {high} is not split by the upper box"
                )));
            }
            if w == high {
                target = GridPoint::new(spec.ak(), w.j);
                relocations += 1;
            }
        }
        // a corner may sit in both pairs only as the one that stays put
        if h.is_some() && v.is_some() && relocations > 0 {
            return Err(Error::LemmaViolation(format!("{w} collides horizontally and vertically")));
        }
        let collision = match (h, v) {
            (None, None) => Collision::None,
            (Some(_), None) => Collision::Horizontal,
            (None, Some(_)) => Collision::Vertical,
            (Some(_), Some(_)) => Collision::Both,
        };
        let assignment = PsiAssignment {
            corner: w,
            cell: cell_with_lower_right(p, target)?,
            relocated: relocations > 0,
            collision,
        };
        assignments.push(assignment);
    }
    let cfg = RookConfig::new(assignments.iter().map(|a| a.cell).collect());
    if cfg.k() != corners.len() {
        return Err(Error::LemmaViolation("two step corners were placed on one cell".into()));
    }
    if !rooks::is_valid_config(p, &cfg, AttackPolicy::Coblock) {
        return Err(Error::LemmaViolation("placed rooks attack each other".into()));
    }
    if !rooks::is_canonical(p, &cfg) {
        return Err(Error::LemmaViolation("placed rooks admit an anti-diagonal switch".into()));
    }
    Ok((cfg, PsiTrace { facet: f.clone(), assignments }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionRow {
    pub k: usize,
    pub facets: usize,
    pub classes: usize,
    pub canonical: usize,
    pub total: bool,
    pub into_canonical: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl BijectionRow {
    pub fn ok(&self) -> bool {
        self.total && self.into_canonical && self.injective && self.surjective
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub rows: Vec<BijectionRow>,
    pub failures: Vec<String>,
    pub bijective: bool,
}

/// Compares the image of `psi` with the canonical representatives, `k` by `k`.
pub fn verify_bijection(p: &Polyomino, budget: Budget) -> Result<BijectionReport> {
    p.frame().ok_or(Error::NotAFrame)?;
    let fs = complex::facets(p, budget)?;
    verify_bijection_with(p, &fs, budget)
}

pub fn verify_bijection_with(p: &Polyomino, fs: &[Facet], budget: Budget) -> Result<BijectionReport> {
    p.frame().ok_or(Error::NotAFrame)?;
    let images: Vec<Result<(RookConfig, PsiTrace)>> = fs.par_iter().map(|f| psi(p, f)).collect();
    let mut by_k: BTreeMap<usize, Vec<Option<RookConfig>>> = BTreeMap::new();
    let mut failures = Vec::new();
    for (f, img) in fs.iter().zip(images) {
        let k = complex::steps_of(p, f)?.len();
        match img {
            Ok((cfg, _)) => by_k.entry(k).or_default().push(Some(cfg)),
            Err(e @ Error::BudgetExceeded { .. }) => return Err(e),
            Err(e) => {
                failures.push(format!("psi failed on a {k}-step facet: {e}"));
                by_k.entry(k).or_default().push(None);
            }
        }
    }
    let max_k = rooks::rook_polynomial(p, AttackPolicy::Coblock, budget)?.degree().unwrap_or(0);
    let top = max_k.max(by_k.keys().next_back().copied().unwrap_or(0));
    let mut rows = Vec::new();
    for k in 0..=top {
        let images = by_k.remove(&k).unwrap_or_default();
        let classes = rooks::switching_classes(p, k, AttackPolicy::Coblock, budget)?;
        let canon: BTreeSet<RookConfig> = classes
            .iter()
            .flat_map(|c| c.iter().filter(|r| rooks::is_canonical(p, r)).cloned())
            .collect();
        let total = images.iter().all(Option::is_some);
        let image: Vec<RookConfig> = images.iter().flatten().cloned().collect();
        let distinct: BTreeSet<RookConfig> = image.iter().cloned().collect();
        let row = BijectionRow {
            k,
            facets: images.len(),
            classes: classes.len(),
            canonical: canon.len(),
            total,
            into_canonical: distinct.is_subset(&canon),
            injective: distinct.len() == image.len(),
            surjective: canon.is_subset(&distinct),
        };
        if !row.ok() {
            failures.push(format!("k={k}: {row:?}"));
        }
        rows.push(row);
    }
    let bijective = rows.iter().all(BijectionRow::ok) && failures.is_empty();
    Ok(BijectionReport { rows, failures, bijective })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub methods_agree: bool,
    pub main_theorem: bool,
    pub regularity: bool,
    pub dimension: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub h_steps: IntPolynomial,
    pub h_shelling: Option<IntPolynomial>,
    pub h_fvector: IntPolynomial,
    pub h_hilbert: Option<IntPolynomial>,
    pub r_tilde: IntPolynomial,
    pub r: IntPolynomial,
    pub groebner: bool,
    pub dim: usize,
    pub verdicts: Verdicts,
}

impl TheoremReport {
    pub fn all_true(&self) -> bool {
        let v = &self.verdicts;
        v.methods_agree && v.main_theorem && v.regularity && v.dimension != Some(false)
    }
}

/// Label used in reports: the cell list.
pub fn polyomino_id(p: &Polyomino) -> String {
    p.to_string()
}

/// Computes every h-polynomial route through the given facets, both rook
/// polynomials, and the verdicts. Hilbert values are checked up to
/// `deg h + 3`.
pub fn verify_main_theorem_with(
    p: &Polyomino,
    fs: &[Facet],
    policy: AttackPolicy,
    budget: Budget,
) -> Result<TheoremReport> {
    let groebner = ideal::is_groebner(p)?;
    let dim = fs.iter().map(Facet::len).max().unwrap_or(0);
    let mut steps = Vec::with_capacity(fs.len());
    for f in fs {
        steps.push(complex::steps_of(p, f)?.len());
    }
    let h_steps = IntPolynomial::from_histogram(steps);
    let h_shelling = match complex::shelling_verify(p, budget) {
        Ok(r) => Some(r.h_shelling),
        Err(Error::NotPure | Error::NotShellable(_)) => None,
        Err(e) => return Err(e),
    };
    let f = complex::f_vector(p, budget)?;
    let h_fvector = complex::h_from_f(&f, dim)?;
    let maxdeg = h_steps.degree().unwrap_or(0) + 3;
    let h_hilbert = match ideal::h_from_hilbert(p, dim, maxdeg, budget) {
        Ok(h) => Some(h),
        Err(Error::UnstableTail(_)) => None,
        Err(e) => return Err(e),
    };
    let r = rooks::rook_polynomial(p, policy, budget)?;
    let r_tilde = rooks::switching_rook_polynomial(p, policy, budget)?;
    let methods_agree = h_shelling.as_ref() == Some(&h_steps)
        && h_fvector == h_steps
        && h_hilbert.as_ref() == Some(&h_steps);
    let dimension = p.frame().map(|_| ideal::krull_dimension_frame(p).ok() == Some(dim));
    let verdicts = Verdicts {
        methods_agree,
        main_theorem: h_steps == r_tilde,
        regularity: h_steps.degree() == r.degree(),
        dimension,
    };
    Ok(TheoremReport {
        id: polyomino_id(p),
        h_steps,
        h_shelling,
        h_fvector,
        h_hilbert,
        r_tilde,
        r,
        groebner,
        dim,
        verdicts,
    })
}

pub fn verify_main_theorem(p: &Polyomino, policy: AttackPolicy, budget: Budget) -> Result<TheoremReport> {
    let fs = complex::facets(p, budget)?;
    verify_main_theorem_with(p, &fs, policy, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_frame, build_rectangle, FrameSpec, NorthEastPath};

    fn p4() -> Polyomino {
        let path = |p: &[(i32, i32)]| NorthEastPath::from_pairs(p).unwrap();
        build_frame(&FrameSpec::new(4, 4, path(&[(2, 2), (2, 3), (3, 3)]), path(&[(2, 2), (3, 2), (3, 3)])))
            .unwrap()
    }

    #[test]
    fn psi_on_p4() {
        let p = p4();
        let fs = complex::facets(&p, Budget::DEFAULT).unwrap();
        let (cfg, trace) = psi(&p, &fs[0]).unwrap();
        assert_eq!(cfg, RookConfig::empty());
        assert!(trace.assignments.is_empty());
        for f in &fs {
            let steps = complex::steps_of(&p, f).unwrap();
            let (cfg, trace) = psi(&p, f).unwrap();
            assert_eq!(cfg.k(), steps.len());
            if let [s] = steps.as_slice() {
                assert_eq!(cfg.rooks(), &[Cell { llc: s.corner.offset(-1, 0) }]);
                assert!(!trace.assignments[0].relocated);
            }
        }
        let report = verify_bijection(&p, Budget::DEFAULT).unwrap();
        assert!(report.bijective, "{report:?}");
    }

    #[test]
    fn non_frames_rejected() {
        let q2 = build_rectangle(3, 3).unwrap();
        assert_eq!(verify_bijection(&q2, Budget::DEFAULT), Err(Error::NotAFrame));
        let f = complex::facets(&q2, Budget::DEFAULT).unwrap().remove(0);
        assert_eq!(psi(&q2, &f).map(|_| ()), Err(Error::NotAFrame));
    }

    #[test]
    fn theorem_small() {
        let q2 = build_rectangle(3, 3).unwrap();
        let r = verify_main_theorem(&q2, AttackPolicy::Coblock, Budget::DEFAULT).unwrap();
        assert_eq!(r.h_steps.coeffs(), &[1, 4, 1]);
        assert!(r.all_true(), "{r:?}");
        let c1 = Polyomino::from_cells([Cell::new(1, 1)]).unwrap();
        let r = verify_main_theorem(&c1, AttackPolicy::Coblock, Budget::DEFAULT).unwrap();
        assert_eq!((r.r.degree(), r.h_steps.degree()), (Some(1), Some(1)));
        assert!(r.all_true());
        let r = verify_main_theorem(&p4(), AttackPolicy::Coblock, Budget::DEFAULT).unwrap();
        assert!(r.all_true(), "{r:?}");
        assert_eq!(r.verdicts.dimension, Some(true));
    }
}
