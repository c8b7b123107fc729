//! Points of the compactified two-sided full shift and of the one-sided
//! full shift, restricted to eventually periodic sequences.

use crate::words::{primitive_root_len, rotate_left, Cell, LeftRay, Letter};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("window start {0} exceeds window end {1}")]
    BadRange(i64, i64),
    #[error("no left ray: the point is empty or the index lies beyond its length")]
    NoRay,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("a non-empty letter follows the empty letter")]
    NotEmptyClosed,
}

/// `l(x)`: the supremum of indices holding a non-ø letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    NegInf,
    Finite(i64),
    PosInf,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::NegInf => write!(f, "-inf"),
            Length::Finite(k) => write!(f, "{k}"),
            Length::PosInf => write!(f, "+inf"),
        }
    }
}

/// `…ppp · body · qqq…` with `body` occupying `[start, start + |body| - 1]`.
///
/// Canonical: both periods primitive, `body` cannot shed a letter into either
/// period, an empty body sits at the leftmost admissible boundary, and a fully
/// periodic point has `start = 0` with `left == right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoSided {
    left: Vec<Letter>,
    body: Vec<Letter>,
    right: Vec<Letter>,
    start: i64,
}

impl TwoSided {
    pub fn left(&self) -> &[Letter] {
        &self.left
    }
    pub fn body(&self) -> &[Letter] {
        &self.body
    }
    pub fn right(&self) -> &[Letter] {
        &self.right
    }
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn is_fully_periodic(&self) -> bool {
        self.body.is_empty() && self.left == self.right
    }

    fn new(left: Vec<Letter>, body: Vec<Letter>, right: Vec<Letter>, start: i64) -> Self {
        let mut left = left[..primitive_root_len(&left)].to_vec();
        let mut right = right[..primitive_root_len(&right)].to_vec();
        let mut body = body;
        let mut start = start;
        let mut lead = 0;
        while lead < body.len() && body[lead] == left[0] {
            left.rotate_left(1);
            lead += 1;
        }
        body.drain(..lead);
        start += lead as i64;
        while body.last().is_some_and(|&a| Some(&a) == right.last()) {
            right.rotate_right(1);
            body.pop();
        }
        if body.is_empty() {
            if left == right {
                let n = left.len() as i64;
                let r = (-start).rem_euclid(n) as usize;
                let p = rotate_left(&left, r);
                return TwoSided {
                    left: p.clone(),
                    body,
                    right: p,
                    start: 0,
                };
            }
            // Two distinct primitive periods agree on a bounded overlap only.
            let bound = left.len() + right.len();
            let mut moved = 0;
            while left.last() == right.last() && moved < bound {
                left.rotate_right(1);
                right.rotate_right(1);
                start -= 1;
                moved += 1;
            }
        }
        TwoSided {
            left,
            body,
            right,
            start,
        }
    }

    fn at(&self, i: i64) -> Letter {
        let len = self.body.len() as i64;
        if i < self.start {
            let p = self.left.len() as i64;
            let off = (self.start - 1 - i) % p;
            self.left[(p - 1 - off) as usize]
        } else if i < self.start + len {
            self.body[(i - self.start) as usize]
        } else {
            let q = self.right.len() as i64;
            self.right[((i - self.start - len) % q) as usize]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BiPoint {
    Empty,
    Finite(LeftRay),
    Infinite(TwoSided),
}

impl BiPoint {
    pub fn infinite(
        left: Vec<Letter>,
        body: Vec<Letter>,
        right: Vec<Letter>,
        start: i64,
    ) -> Result<Self, PointError> {
        if left.is_empty() || right.is_empty() {
            return Err(PointError::EmptyPeriod);
        }
        Ok(BiPoint::Infinite(TwoSided::new(left, body, right, start)))
    }

    /// The constant point `…aaa…`.
    pub fn constant(a: Letter) -> Self {
        BiPoint::Infinite(TwoSided::new(vec![a], vec![], vec![a], 0))
    }

    /// The point `r · u · (q)^+` where `u` starts right after `r.end()`.
    pub fn from_ray(r: &LeftRay, u: &[Letter], q: &[Letter]) -> Result<Self, PointError> {
        let mut body = r.transient().to_vec();
        body.extend_from_slice(u);
        let start = r.end() - r.transient().len() as i64 + 1;
        BiPoint::infinite(r.period().to_vec(), body, q.to_vec(), start)
    }

    /// Builds a point from one period of its left part, a body starting at
    /// `start`, and one period of its right part, all over the extended alphabet.
    pub fn from_cells(
        left: &[Cell],
        body: &[Cell],
        right: &[Cell],
        start: i64,
    ) -> Result<Self, PointError> {
        if left.is_empty() || right.is_empty() {
            return Err(PointError::EmptyPeriod);
        }
        let all: Vec<Cell> = left.iter().chain(body).chain(right).copied().collect();
        if left.iter().any(Option::is_none) {
            return if all.iter().all(Option::is_none) {
                Ok(BiPoint::Empty)
            } else {
                Err(PointError::NotEmptyClosed)
            };
        }
        let closed = all.windows(2).all(|w| w[0].is_some() || w[1].is_none());
        if !closed || (right.iter().any(Option::is_none) && !right.iter().all(Option::is_none)) {
            return Err(PointError::NotEmptyClosed);
        }
        let lp: Vec<Letter> = left.iter().flatten().copied().collect();
        if right[0].is_some() {
            let b = body.iter().flatten().copied().collect();
            let r = right.iter().flatten().copied().collect();
            return BiPoint::infinite(lp, b, r, start);
        }
        let t: Vec<Letter> = body.iter().map_while(|c| *c).collect();
        let end = start + t.len() as i64 - 1;
        Ok(BiPoint::Finite(
            LeftRay::new(lp, t, end).expect("left period is nonempty"),
        ))
    }

    pub fn index(&self, i: i64) -> Cell {
        match self {
            BiPoint::Empty => None,
            BiPoint::Finite(r) => (i <= r.end()).then(|| r.at(i)),
            BiPoint::Infinite(t) => Some(t.at(i)),
        }
    }

    /// `σ^n`: `(σ^n x)_i = x_{i+n}`.
    pub fn shift(&self, n: i64) -> BiPoint {
        match self {
            BiPoint::Empty => BiPoint::Empty,
            BiPoint::Finite(r) => BiPoint::Finite(r.with_end(r.end() - n)),
            BiPoint::Infinite(t) => BiPoint::Infinite(TwoSided::new(
                t.left.clone(),
                t.body.clone(),
                t.right.clone(),
                t.start - n,
            )),
        }
    }

    pub fn length(&self) -> Length {
        match self {
            BiPoint::Empty => Length::NegInf,
            BiPoint::Finite(r) => Length::Finite(r.end()),
            BiPoint::Infinite(_) => Length::PosInf,
        }
    }

    /// `(x_i … x_j)`.
    pub fn window(&self, i: i64, j: i64) -> Result<Vec<Cell>, PointError> {
        if i > j {
            return Err(PointError::BadRange(i, j));
        }
        Ok(self.cells(i, j))
    }

    /// Like [`BiPoint::window`] but empty when `i > j`.
    pub fn cells(&self, i: i64, j: i64) -> Vec<Cell> {
        (i..=j).map(|k| self.index(k)).collect()
    }

    /// The ray `(x_i)_{i <= k}`.
    pub fn tail_ray(&self, k: i64) -> Result<LeftRay, PointError> {
        match self {
            BiPoint::Empty => Err(PointError::NoRay),
            BiPoint::Finite(r) if k > r.end() => Err(PointError::NoRay),
            BiPoint::Finite(r) => Ok(r.truncate(k)),
            BiPoint::Infinite(t) => {
                let base =
                    LeftRay::new(t.left.clone(), vec![], t.start - 1).expect("period is nonempty");
                if k < t.start {
                    return Ok(base.truncate(k));
                }
                let w: Vec<Letter> = (t.start..=k).map(|i| t.at(i)).collect();
                Ok(base.extend(&w))
            }
        }
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        match self {
            BiPoint::Empty => BTreeSet::new(),
            BiPoint::Finite(r) => r.letters(),
            BiPoint::Infinite(t) => t
                .left
                .iter()
                .chain(&t.body)
                .chain(&t.right)
                .copied()
                .collect(),
        }
    }

    /// One left period, the body, one right period and the body start, over
    /// the extended alphabet. Positions left of `start` follow the left
    /// period, positions past the body follow the right period.
    pub fn regions(&self) -> (Vec<Cell>, Vec<Cell>, Vec<Cell>, i64) {
        let some = |w: &[Letter]| w.iter().map(|&a| Some(a)).collect::<Vec<_>>();
        match self {
            BiPoint::Empty => (vec![None], vec![], vec![None], 0),
            BiPoint::Finite(r) => {
                let start = r.end() - r.transient().len() as i64 + 1;
                (some(r.period()), some(r.transient()), vec![None], start)
            }
            BiPoint::Infinite(t) => (some(&t.left), some(&t.body), some(&t.right), t.start),
        }
    }

    /// Applies a local rule: `(Φx)_n = f(x_{n-mem} … x_{n+ant})`.
    pub fn map_windows(
        &self,
        mem: usize,
        ant: usize,
        f: impl Fn(&[Cell]) -> Cell,
    ) -> Result<BiPoint, PointError> {
        let (left, body, right, start) = self.regions();
        let (p, q) = (left.len() as i64, right.len() as i64);
        let (mem, ant) = (mem as i64, ant as i64);
        let lo = start - ant - p;
        let hi = start + body.len() as i64 + mem;
        let ys: Vec<Cell> = (lo..hi + q)
            .map(|n| f(&self.cells(n - mem, n + ant)))
            .collect();
        let (lp, rest) = ys.split_at(p as usize);
        let (b, rp) = rest.split_at((hi - lo - p) as usize);
        BiPoint::from_cells(lp, b, rp, lo + p)
    }

    /// Whether `σ^p x = x`.
    pub fn has_period(&self, p: i64) -> bool {
        self.shift(p) == *self
    }

    /// Largest left and right period length, or 1 where absent.
    pub fn period_scale(&self) -> (usize, usize) {
        match self {
            BiPoint::Empty => (1, 1),
            BiPoint::Finite(r) => (r.period().len(), 1),
            BiPoint::Infinite(t) => (t.left.len(), t.right.len()),
        }
    }
}

/// A point of the one-sided full shift, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OnePoint {
    Empty,
    Finite(Vec<Letter>),
    Infinite {
        transient: Vec<Letter>,
        period: Vec<Letter>,
    },
}

impl OnePoint {
    pub fn finite(word: Vec<Letter>) -> Self {
        if word.is_empty() {
            OnePoint::Empty
        } else {
            OnePoint::Finite(word)
        }
    }

    pub fn infinite(transient: Vec<Letter>, period: Vec<Letter>) -> Result<Self, PointError> {
        if period.is_empty() {
            return Err(PointError::EmptyPeriod);
        }
        let mut period = period[..primitive_root_len(&period)].to_vec();
        let mut transient = transient;
        while transient.last().is_some_and(|&a| Some(&a) == period.last()) {
            period.rotate_right(1);
            transient.pop();
        }
        Ok(OnePoint::Infinite { transient, period })
    }

    /// `z_i` for `i >= 1`.
    pub fn index(&self, i: usize) -> Cell {
        debug_assert!(i >= 1);
        match self {
            OnePoint::Empty => None,
            OnePoint::Finite(w) => w.get(i - 1).copied(),
            OnePoint::Infinite { transient, period } => {
                let k = i - 1;
                Some(if k < transient.len() {
                    transient[k]
                } else {
                    period[(k - transient.len()) % period.len()]
                })
            }
        }
    }

    /// `z_1 … z_n`.
    pub fn prefix(&self, n: usize) -> Vec<Cell> {
        (1..=n).map(|i| self.index(i)).collect()
    }

    pub fn length(&self) -> Length {
        match self {
            OnePoint::Empty => Length::NegInf,
            OnePoint::Finite(w) => Length::Finite(w.len() as i64),
            OnePoint::Infinite { .. } => Length::PosInf,
        }
    }

    /// One-sided shift: drops the first letter.
    pub fn shift(&self) -> OnePoint {
        match self {
            OnePoint::Empty => OnePoint::Empty,
            OnePoint::Finite(w) => OnePoint::finite(w[1..].to_vec()),
            OnePoint::Infinite { transient, period } => {
                if transient.is_empty() {
                    OnePoint::Infinite {
                        transient: vec![],
                        period: rotate_left(period, 1),
                    }
                } else {
                    OnePoint::infinite(transient[1..].to_vec(), period.clone())
                        .expect("period is nonempty")
                }
            }
        }
    }

    /// Prepends a word.
    pub fn prepend(&self, u: &[Letter]) -> OnePoint {
        match self {
            OnePoint::Empty => OnePoint::finite(u.to_vec()),
            OnePoint::Finite(w) => OnePoint::Finite(u.iter().chain(w).copied().collect()),
            OnePoint::Infinite { transient, period } => {
                let t = u.iter().chain(transient).copied().collect();
                OnePoint::infinite(t, period.clone()).expect("period is nonempty")
            }
        }
    }
}
