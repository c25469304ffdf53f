//! Non-attacking rook configurations, switches, switching classes and the
//! rook and switching rook polynomials.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::grid::{Cell, GridInterval, Polyomino};
use crate::poly::IntPolynomial;
use crate::util::bits;

/// When two rooks in the same row or column attack each other.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AttackPolicy {
    /// Only if every cell between them belongs to the polyomino.
    #[default]
    Coblock,
    /// Always, gaps included.
    Line,
}

impl AttackPolicy {
    pub fn name(self) -> &'static str {
        match self {
            AttackPolicy::Coblock => "coblock",
            AttackPolicy::Line => "line",
        }
    }
}

/// Rooks on cells, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Cell>", into = "Vec<Cell>")]
pub struct RookConfig {
    rooks: Vec<Cell>,
}

impl RookConfig {
    pub fn new(mut rooks: Vec<Cell>) -> Self {
        rooks.sort();
        rooks.dedup();
        RookConfig { rooks }
    }

    pub fn empty() -> Self {
        RookConfig { rooks: Vec::new() }
    }

    pub fn rooks(&self) -> &[Cell] {
        &self.rooks
    }

    pub fn k(&self) -> usize {
        self.rooks.len()
    }
}

impl From<Vec<Cell>> for RookConfig {
    fn from(rooks: Vec<Cell>) -> Self {
        RookConfig::new(rooks)
    }
}

impl From<RookConfig> for Vec<Cell> {
    fn from(c: RookConfig) -> Self {
        c.rooks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwitchOrientation {
    Diagonal,
    Antidiagonal,
}

/// Two rooks at opposite corner cells of a rectangle lying in the polyomino.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchMove {
    pub pair: (Cell, Cell),
    pub rect: GridInterval,
    pub orientation: SwitchOrientation,
}

impl SwitchMove {
    fn target(&self) -> (Cell, Cell) {
        let (a, b) = self.pair;
        (Cell::new(a.llc.i, b.llc.j), Cell::new(b.llc.i, a.llc.j))
    }
}

pub fn rooks_attack(p: &Polyomino, c1: Cell, c2: Cell, policy: AttackPolicy) -> Result<bool> {
    for c in [c1, c2] {
        if !p.contains(c) {
            return Err(Error::CellNotInPolyomino(c));
        }
    }
    Ok(attack_unchecked(p, c1, c2, policy))
}

fn attack_unchecked(p: &Polyomino, c1: Cell, c2: Cell, policy: AttackPolicy) -> bool {
    if c1 == c2 {
        return true;
    }
    let (a, b) = (c1.llc.min(c2.llc), c1.llc.max(c2.llc));
    if a.i != b.i && a.j != b.j {
        return false;
    }
    match policy {
        AttackPolicy::Line => true,
        AttackPolicy::Coblock => p.cells_full(a, b),
    }
}

/// The witnessing rectangle if the two cells are opposite corners of a
/// rectangle of cells in `p`.
fn switch_rect(p: &Polyomino, c1: Cell, c2: Cell) -> Option<SwitchMove> {
    let (x1, y1, x2, y2) = (c1.llc.i, c1.llc.j, c2.llc.i, c2.llc.j);
    if x1 == x2 || y1 == y2 {
        return None;
    }
    let lo = crate::grid::GridPoint::new(x1.min(x2), y1.min(y2));
    let hi = crate::grid::GridPoint::new(x1.max(x2), y1.max(y2));
    if !p.cells_full(lo, hi) {
        return None;
    }
    let pair = if c1 < c2 { (c1, c2) } else { (c2, c1) };
    let orientation = if (x1 < x2) == (y1 < y2) {
        SwitchOrientation::Diagonal
    } else {
        SwitchOrientation::Antidiagonal
    };
    Some(SwitchMove { pair, rect: GridInterval { lo, hi: hi.offset(1, 1) }, orientation })
}

pub fn switching_moves(p: &Polyomino, cfg: &RookConfig) -> Vec<SwitchMove> {
    let r = &cfg.rooks;
    let mut out = Vec::new();
    for a in 0..r.len() {
        for b in a + 1..r.len() {
            out.extend(switch_rect(p, r[a], r[b]));
        }
    }
    out
}

pub fn is_valid_config(p: &Polyomino, cfg: &RookConfig, policy: AttackPolicy) -> bool {
    let r = &cfg.rooks;
    r.iter().all(|&c| p.contains(c))
        && (0..r.len()).all(|a| (a + 1..r.len()).all(|b| !attack_unchecked(p, r[a], r[b], policy)))
}

pub fn apply_switch(
    p: &Polyomino,
    cfg: &RookConfig,
    mv: &SwitchMove,
    policy: AttackPolicy,
) -> Result<RookConfig> {
    let (a, b) = mv.pair;
    if !cfg.rooks.contains(&a) || !cfg.rooks.contains(&b) || switch_rect(p, a, b).as_ref() != Some(mv) {
        return Err(Error::InvalidMove);
    }
    let (na, nb) = mv.target();
    let rooks = cfg.rooks.iter().copied().filter(|&c| c != a && c != b).chain([na, nb]).collect();
    let out = RookConfig::new(rooks);
    if !is_valid_config(p, &out, policy) {
        return Err(Error::ResultAttacks);
    }
    Ok(out)
}

pub fn is_canonical(p: &Polyomino, cfg: &RookConfig) -> bool {
    switching_moves(p, cfg)
        .iter()
        .all(|m| m.orientation == SwitchOrientation::Diagonal)
}

/// Cells indexed in sorted order with pairwise attack masks.
struct Board<'a> {
    p: &'a Polyomino,
    cells: Vec<Cell>,
    attack: Vec<u128>,
}

impl<'a> Board<'a> {
    fn new(p: &'a Polyomino, policy: AttackPolicy) -> Result<Self> {
        if p.rank() > 128 {
            return Err(Error::TooLarge("cell set"));
        }
        let cells: Vec<Cell> = p.cells().iter().copied().collect();
        let attack = cells
            .iter()
            .map(|&a| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| a != b && attack_unchecked(p, a, b, policy))
                    .fold(0u128, |m, (t, _)| m | 1 << t)
            })
            .collect();
        Ok(Board { p, cells, attack })
    }

    fn config(&self, mask: u128) -> RookConfig {
        RookConfig { rooks: bits(mask).map(|t| self.cells[t]).collect() }
    }

    fn index(&self, c: Cell) -> usize {
        self.cells.binary_search(&c).expect("cell of the board")
    }

    /// All non-attacking `k`-subsets as masks, in lexicographic order of
    /// their sorted cell lists.
    fn configs(&self, k: usize, budget: Budget) -> Result<Vec<u128>> {
        let n = self.cells.len();
        let mut out = Vec::new();
        fn rec(b: &Board, k: usize, start: usize, n: usize, mask: u128, forbidden: u128, out: &mut Vec<u128>, budget: Budget) -> Result<()> {
            if mask.count_ones() as usize == k {
                budget.check("rook configurations", out.len() as u128 + 1)?;
                out.push(mask);
                return Ok(());
            }
            for t in start..n {
                if forbidden >> t & 1 == 0 {
                    rec(b, k, t + 1, n, mask | 1 << t, forbidden | b.attack[t], out, budget)?;
                }
            }
            Ok(())
        }
        rec(self, k, 0, n, 0, 0, &mut out, budget)?;
        Ok(out)
    }

    fn neighbors(&self, mask: u128) -> Vec<u128> {
        let idx: Vec<usize> = bits(mask).collect();
        let mut out = Vec::new();
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                if let Some(mv) = switch_rect(self.p, self.cells[idx[a]], self.cells[idx[b]]) {
                    let (na, nb) = mv.target();
                    let next = mask & !(1u128 << idx[a]) & !(1u128 << idx[b])
                        | 1u128 << self.index(na)
                        | 1u128 << self.index(nb);
                    out.push(next);
                }
            }
        }
        out
    }

    /// Switching classes of masks, ordered by smallest member.
    fn classes(&self, k: usize, budget: Budget) -> Result<Vec<Vec<u128>>> {
        let all = self.configs(k, budget)?;
        let pos: HashMap<u128, usize> = all.iter().enumerate().map(|(t, &m)| (m, t)).collect();
        let mut class_of = vec![usize::MAX; all.len()];
        let mut classes: Vec<Vec<u128>> = Vec::new();
        for start in 0..all.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                for next in self.neighbors(all[t]) {
                    let u = *pos.get(&next).ok_or(Error::ResultAttacks)?;
                    if class_of[u] == usize::MAX {
                        class_of[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members.into_iter().map(|t| all[t]).collect());
        }
        Ok(classes)
    }
}

pub fn rook_configs(p: &Polyomino, k: usize, policy: AttackPolicy, budget: Budget) -> Result<Vec<RookConfig>> {
    let b = Board::new(p, policy)?;
    Ok(b.configs(k, budget)?.into_iter().map(|m| b.config(m)).collect())
}

pub fn rook_polynomial(p: &Polyomino, policy: AttackPolicy, budget: Budget) -> Result<IntPolynomial> {
    let b = Board::new(p, policy)?;
    let mut coeffs = Vec::new();
    for k in 0.. {
        let c = b.configs(k, budget)?.len();
        if c == 0 {
            break;
        }
        coeffs.push(c as i64);
    }
    Ok(IntPolynomial::new(coeffs))
}

pub fn switching_classes(
    p: &Polyomino,
    k: usize,
    policy: AttackPolicy,
    budget: Budget,
) -> Result<Vec<Vec<RookConfig>>> {
    let b = Board::new(p, policy)?;
    Ok(b.classes(k, budget)?
        .into_iter()
        .map(|class| class.into_iter().map(|m| b.config(m)).collect())
        .collect())
}

pub fn switching_rook_polynomial(p: &Polyomino, policy: AttackPolicy, budget: Budget) -> Result<IntPolynomial> {
    let b = Board::new(p, policy)?;
    let mut coeffs = Vec::new();
    for k in 0.. {
        let c = b.classes(k, budget)?.len();
        if c == 0 {
            break;
        }
        coeffs.push(c as i64);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Canonical members of every switching class at one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalSet {
    /// Canonical members, class by class.
    pub representatives: Vec<RookConfig>,
    /// Number of canonical members in each class.
    pub per_class: Vec<usize>,
}

impl CanonicalSet {
    pub fn unique(&self) -> bool {
        self.per_class.iter().all(|&c| c == 1)
    }
}

/// On frames under the coblock policy every class must have exactly one
/// canonical member.
pub fn canonical_representatives(
    p: &Polyomino,
    k: usize,
    policy: AttackPolicy,
    budget: Budget,
) -> Result<CanonicalSet> {
    let classes = switching_classes(p, k, policy, budget)?;
    let mut representatives = Vec::new();
    let mut per_class = Vec::new();
    for (id, class) in classes.into_iter().enumerate() {
        let canon: Vec<RookConfig> = class.into_iter().filter(|c| is_canonical(p, c)).collect();
        if p.frame().is_some() && policy == AttackPolicy::Coblock && canon.len() != 1 {
            return Err(Error::NoCanonicalInClass { k, class: id, count: canon.len() });
        }
        per_class.push(canon.len());
        representatives.extend(canon);
    }
    Ok(CanonicalSet { representatives, per_class })
}

/// Applies anti-diagonal switches until none is left. After `cap` switches
/// it gives up and returns the smallest canonical member of the class.
pub fn canonicalize_greedy(
    p: &Polyomino,
    cfg: &RookConfig,
    policy: AttackPolicy,
    cap: usize,
    budget: Budget,
) -> Result<Option<RookConfig>> {
    let mut cur = cfg.clone();
    for _ in 0..cap {
        let Some(mv) = switching_moves(p, &cur)
            .into_iter()
            .find(|m| m.orientation == SwitchOrientation::Antidiagonal)
        else {
            return Ok(Some(cur));
        };
        cur = apply_switch(p, &cur, &mv, policy)?;
    }
    let class = switching_classes(p, cfg.k(), policy, budget)?
        .into_iter()
        .find(|class| class.contains(cfg))
        .unwrap_or_default();
    Ok(class.into_iter().find(|c| is_canonical(p, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_frame, build_rectangle, FrameSpec, NorthEastPath};

    fn cfg(cells: &[(i32, i32)]) -> RookConfig {
        RookConfig::new(cells.iter().map(|&c| c.into()).collect())
    }

    fn c1() -> Polyomino {
        Polyomino::from_cells([Cell::new(1, 1)]).unwrap()
    }

    fn p4() -> Polyomino {
        let path = |p: &[(i32, i32)]| NorthEastPath::from_pairs(p).unwrap();
        build_frame(&FrameSpec::new(4, 4, path(&[(2, 2), (2, 3), (3, 3)]), path(&[(2, 2), (3, 2), (3, 3)])))
            .unwrap()
    }

    const B: Budget = Budget::DEFAULT;
    const CO: AttackPolicy = AttackPolicy::Coblock;

    #[test]
    fn attacks() {
        let p = p4();
        assert!(rooks_attack(&p, Cell::new(1, 1), Cell::new(3, 1), CO).unwrap());
        assert!(!rooks_attack(&p, Cell::new(1, 2), Cell::new(3, 2), CO).unwrap());
        assert!(rooks_attack(&p, Cell::new(1, 2), Cell::new(3, 2), AttackPolicy::Line).unwrap());
        assert_eq!(
            rooks_attack(&p, Cell::new(2, 2), Cell::new(3, 2), CO),
            Err(Error::CellNotInPolyomino(Cell::new(2, 2)))
        );
    }

    #[test]
    fn configs_and_polynomials() {
        let q2 = build_rectangle(3, 3).unwrap();
        assert_eq!(rook_configs(&c1(), 1, CO, B).unwrap().len(), 1);
        assert_eq!(rook_configs(&q2, 2, CO, B).unwrap(), vec![cfg(&[(1, 1), (2, 2)]), cfg(&[(1, 2), (2, 1)])]);
        assert_eq!(rook_configs(&c1(), 0, CO, B).unwrap(), vec![RookConfig::empty()]);
        assert!(rook_configs(&p4(), 4, CO, B).unwrap().contains(&cfg(&[(1, 2), (3, 2), (2, 1), (2, 3)])));
        assert_eq!(rook_polynomial(&c1(), CO, B).unwrap().coeffs(), &[1, 1]);
        assert_eq!(rook_polynomial(&q2, CO, B).unwrap().coeffs(), &[1, 4, 2]);
        assert_eq!(rook_polynomial(&p4(), CO, B).unwrap().degree(), Some(4));
        assert_eq!(switching_rook_polynomial(&c1(), CO, B).unwrap().coeffs(), &[1, 1]);
        assert_eq!(switching_rook_polynomial(&q2, CO, B).unwrap().coeffs(), &[1, 4, 1]);
    }

    #[test]
    fn switches() {
        let q2 = build_rectangle(3, 3).unwrap();
        let diag = cfg(&[(1, 1), (2, 2)]);
        let moves = switching_moves(&q2, &diag);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].orientation, SwitchOrientation::Diagonal);
        assert_eq!(moves[0].rect, GridInterval { lo: (1, 1).into(), hi: (3, 3).into() });
        let anti = apply_switch(&q2, &diag, &moves[0], CO).unwrap();
        assert_eq!(anti, cfg(&[(1, 2), (2, 1)]));
        let back = apply_switch(&q2, &anti, &switching_moves(&q2, &anti)[0], CO).unwrap();
        assert_eq!(back, diag);
        assert!(is_canonical(&q2, &diag) && !is_canonical(&q2, &anti));

        let p = p4();
        assert!(switching_moves(&p, &cfg(&[(1, 1), (3, 3)])).is_empty());
        assert!(is_canonical(&p, &cfg(&[(1, 1), (3, 3)])));
        let bogus = SwitchMove {
            pair: (Cell::new(1, 1), Cell::new(2, 3)),
            rect: GridInterval { lo: (1, 1).into(), hi: (3, 4).into() },
            orientation: SwitchOrientation::Diagonal,
        };
        assert_eq!(apply_switch(&p, &cfg(&[(1, 1), (2, 3)]), &bogus, CO), Err(Error::InvalidMove));
    }

    #[test]
    fn classes_and_canonical() {
        let q2 = build_rectangle(3, 3).unwrap();
        let classes = switching_classes(&q2, 2, CO, B).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 2);
        let reps = canonical_representatives(&q2, 2, CO, B).unwrap();
        assert_eq!(reps.representatives, vec![cfg(&[(1, 1), (2, 2)])]);
        assert_eq!(switching_classes(&c1(), 1, CO, B).unwrap().len(), 1);
        let p = p4();
        for k in 0..=4 {
            assert!(canonical_representatives(&p, k, CO, B).unwrap().unique());
        }
        let anti = cfg(&[(1, 2), (2, 1)]);
        assert_eq!(canonicalize_greedy(&q2, &anti, CO, 10, B).unwrap(), Some(cfg(&[(1, 1), (2, 2)])));
        assert_eq!(canonicalize_greedy(&q2, &anti, CO, 0, B).unwrap(), Some(cfg(&[(1, 1), (2, 2)])));
    }
}
