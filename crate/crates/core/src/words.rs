//! Letters, wildcard patterns and eventually periodic left rays.
//!
//! The alphabet is the set of nonnegative integers. The empty letter ø is
//! modelled as `None` inside a [`Cell`]; it never appears in a [`LeftRay`]
//! or in the letter list of a pattern.

use std::collections::BTreeSet;
use thiserror::Error;

pub type Letter = u64;

/// A letter of the extended alphabet: `None` is ø.
pub type Cell = Option<Letter>;

/// Stand-in for any letter that no pattern mentions. Text parsers reject it.
pub const FRESH: Letter = Letter::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("period of a left ray must be nonempty")]
    EmptyPeriod,
    #[error("the empty letter cannot occur inside a left ray")]
    EmptyLetterInRay,
    #[error("pattern must have at least one cell")]
    EmptyPattern,
}

/// One cell of a [`Pattern`]. All variants match non-ø letters only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatCell {
    Is(Letter),
    Any,
    /// Any letter outside the listed finite set.
    AnyExcept(BTreeSet<Letter>),
}

impl PatCell {
    pub fn matches(&self, a: Letter) -> bool {
        match self {
            PatCell::Is(b) => *b == a,
            PatCell::Any => true,
            PatCell::AnyExcept(s) => !s.contains(&a),
        }
    }

    pub fn matches_cell(&self, c: Cell) -> bool {
        c.is_some_and(|a| self.matches(a))
    }

    pub fn is_wild(&self) -> bool {
        !matches!(self, PatCell::Is(_))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        let (one, set) = match self {
            PatCell::Is(a) => (Some(*a), None),
            PatCell::Any => (None, None),
            PatCell::AnyExcept(s) => (None, Some(s)),
        };
        one.into_iter().chain(set.into_iter().flatten().copied())
    }

    /// Intersection of the letter sets of two cells, if nonempty.
    pub fn meet(&self, other: &PatCell) -> Option<PatCell> {
        use PatCell::*;
        match (self, other) {
            (Any, c) | (c, Any) => Some(c.clone()),
            (Is(a), Is(b)) => (a == b).then_some(Is(*a)),
            (Is(a), AnyExcept(s)) | (AnyExcept(s), Is(a)) => (!s.contains(a)).then_some(Is(*a)),
            (AnyExcept(s), AnyExcept(t)) => Some(AnyExcept(s.union(t).copied().collect())),
        }
    }
}

/// A finite word of cells where `*` matches exactly one non-ø letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    cells: Vec<PatCell>,
}

impl Pattern {
    pub fn new(cells: Vec<PatCell>) -> Result<Self, WordError> {
        if cells.is_empty() {
            return Err(WordError::EmptyPattern);
        }
        Ok(Pattern { cells })
    }

    pub fn exact(word: &[Letter]) -> Result<Self, WordError> {
        Pattern::new(word.iter().map(|&a| PatCell::Is(a)).collect())
    }

    pub fn cells(&self) -> &[PatCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn has_wildcard(&self) -> bool {
        self.cells.iter().any(PatCell::is_wild)
    }

    pub fn matches(&self, w: &[Letter]) -> bool {
        w.len() == self.cells.len() && self.cells.iter().zip(w).all(|(c, &a)| c.matches(a))
    }

    pub fn matches_cells(&self, w: &[Cell]) -> bool {
        w.len() == self.cells.len() && self.cells.iter().zip(w).all(|(c, &a)| c.matches_cell(a))
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.cells.iter().flat_map(PatCell::letters).collect()
    }

    /// Sub-pattern on the half-open cell range.
    pub fn slice(&self, from: usize, to: usize) -> Pattern {
        Pattern {
            cells: self.cells[from..to].to_vec(),
        }
    }

    /// Left-pads with `*` up to length `m`.
    pub fn padded_left(&self, m: usize) -> Pattern {
        if self.len() >= m {
            return self.clone();
        }
        let mut cells = vec![PatCell::Any; m - self.len()];
        cells.extend(self.cells.iter().cloned());
        Pattern { cells }
    }
}

/// Smallest `d` such that `w` is `w[..d]` repeated.
pub fn primitive_root_len<T: PartialEq>(w: &[T]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]))
        .unwrap_or(n)
}

pub fn rotate_left<T: Clone>(w: &[T], r: usize) -> Vec<T> {
    let r = r % w.len().max(1);
    w[r..].iter().chain(&w[..r]).cloned().collect()
}

/// True iff `u` is a rotation of `v`.
pub fn conjugate<T: PartialEq + Clone>(u: &[T], v: &[T]) -> bool {
    u.len() == v.len() && (0..u.len().max(1)).any(|r| rotate_left(v, r) == u)
}

/// Cantor pairing of two letters; `None` on overflow or when the code would
/// collide with [`FRESH`].
pub fn pair(a: Letter, b: Letter) -> Option<Letter> {
    let s = a as u128 + b as u128;
    let c = s.checked_mul(s + 1)? / 2 + b as u128;
    (c < FRESH as u128).then_some(c as Letter)
}

/// Inverse of [`pair`].
pub fn unpair(c: Letter) -> (Letter, Letter) {
    let c = c as u128;
    let mut s = ((((8 * c + 1) as f64).sqrt() as u128).saturating_sub(1)) / 2;
    while (s + 1) * (s + 2) / 2 <= c {
        s += 1;
    }
    while s * (s + 1) / 2 > c {
        s -= 1;
    }
    let b = c - s * (s + 1) / 2;
    ((s - b) as Letter, b as Letter)
}

/// Code of the tuple `[a_1 … a_m]`: `a_1` for `m = 1`, else
/// `pair(code(a_1 … a_{m-1}), a_m)`.
pub fn encode_tuple(t: &[Letter]) -> Option<Letter> {
    let (&first, rest) = t.split_first()?;
    rest.iter().try_fold(first, |c, &a| pair(c, a))
}

/// Inverse of [`encode_tuple`] for tuples of the given arity.
pub fn decode_tuple(c: Letter, arity: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(arity);
    let mut c = c;
    for _ in 1..arity {
        let (rest, last) = unpair(c);
        out.push(last);
        c = rest;
    }
    out.push(c);
    out.reverse();
    out
}

/// Eventually periodic left-infinite word `…ppp t` whose last letter sits at `end`.
///
/// Canonical: `period` is primitive and `transient` does not start with the
/// letter that would continue the periodic part, so equal sequences have
/// identical fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftRay {
    period: Vec<Letter>,
    transient: Vec<Letter>,
    end: i64,
}

/// Canonical form of the ray `(period)^- transient` ending at `end`.
pub fn canonicalize_ray(
    period: &[Cell],
    transient: &[Cell],
    end: i64,
) -> Result<LeftRay, WordError> {
    if period.is_empty() {
        return Err(WordError::EmptyPeriod);
    }
    let unwrap = |w: &[Cell]| {
        w.iter()
            .map(|c| c.ok_or(WordError::EmptyLetterInRay))
            .collect::<Result<Vec<_>, _>>()
    };
    LeftRay::new(unwrap(period)?, unwrap(transient)?, end)
}

impl LeftRay {
    pub fn new(period: Vec<Letter>, transient: Vec<Letter>, end: i64) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        let d = primitive_root_len(&period);
        let mut period = period[..d].to_vec();
        let mut skip = 0;
        while skip < transient.len() && transient[skip] == period[0] {
            period.rotate_left(1);
            skip += 1;
        }
        Ok(LeftRay {
            period,
            transient: transient[skip..].to_vec(),
            end,
        })
    }

    /// The constant ray `(a)^-` ending at `end`.
    pub fn constant(a: Letter, end: i64) -> Self {
        LeftRay {
            period: vec![a],
            transient: vec![],
            end,
        }
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn transient(&self) -> &[Letter] {
        &self.transient
    }

    pub fn end(&self) -> i64 {
        self.end
    }

    /// Letter at index `i`; requires `i <= end`.
    pub fn at(&self, i: i64) -> Letter {
        debug_assert!(i <= self.end);
        let off = (self.end - i) as u64 as usize;
        let t = self.transient.len();
        if off < t {
            return self.transient[t - 1 - off];
        }
        let p = self.period.len();
        self.period[p - 1 - (off - t) % p]
    }

    /// The `depth` letters ending at `end`, left to right.
    pub fn expand(&self, depth: usize) -> Vec<Letter> {
        (0..depth as i64)
            .rev()
            .map(|m| self.at(self.end - m))
            .collect()
    }

    pub fn with_end(&self, end: i64) -> LeftRay {
        LeftRay {
            end,
            ..self.clone()
        }
    }

    /// The ray `x_{<= end} a` ending at `end + 1`.
    pub fn push(&self, a: Letter) -> LeftRay {
        let mut r = self.clone();
        r.end += 1;
        if r.transient.is_empty() && r.period[0] == a {
            r.period.rotate_left(1);
        } else {
            r.transient.push(a);
        }
        r
    }

    pub fn extend(&self, w: &[Letter]) -> LeftRay {
        w.iter().fold(self.clone(), |r, &a| r.push(a))
    }

    /// The prefix ray `(x_i)_{i <= j}`; requires `j <= end`.
    pub fn truncate(&self, j: i64) -> LeftRay {
        debug_assert!(j <= self.end);
        let off = (self.end - j) as usize;
        let t = self.transient.len();
        if off < t {
            return LeftRay {
                period: self.period.clone(),
                transient: self.transient[..t - off].to_vec(),
                end: j,
            };
        }
        let p = self.period.len();
        let r = p - 1 - (off - t) % p;
        LeftRay {
            period: rotate_left(&self.period, r + 1),
            transient: vec![],
            end: j,
        }
    }

    /// Same sequence up to a shift of the end index.
    pub fn same_shape(&self, other: &LeftRay) -> bool {
        self.period == other.period && self.transient == other.transient
    }

    /// Whether `f` occurs as a left-infinite subblock, i.e. some prefix ray
    /// `(x_i)_{i <= j}` equals `f` after realigning end indices.
    pub fn contains_tail(&self, f: &LeftRay) -> bool {
        let p = self.period.len();
        if f.period.len() != p || f.transient.len() > self.transient.len() + p {
            return false;
        }
        let lowest = self.end - self.transient.len() as i64 - p as i64 + 1;
        (lowest..=self.end).any(|j| self.truncate(j).same_shape(f))
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.period.iter().chain(&self.transient).copied().collect()
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> LeftRay {
        let period = self.period.iter().map(|&a| f(a)).collect();
        let transient = self.transient.iter().map(|&a| f(a)).collect();
        LeftRay::new(period, transient, self.end).expect("period stays nonempty")
    }

    /// Every position `j <= end` where `p` matches the window ending at `j`.
    pub fn occurrences(&self, p: &Pattern) -> Occurrences {
        let w = p.len() as i64;
        let t = self.transient.len() as i64;
        let per = self.period.len() as i64;
        let hit = |j: i64| p.matches(&self.truncate(j).expand(w as usize));
        let isolated: Vec<i64> = (self.end - t + 1..=self.end)
            .rev()
            .filter(|&j| hit(j))
            .collect();
        let top = self.end - t;
        let heads: Vec<i64> = (top - per + 1..=top).rev().filter(|&j| hit(j)).collect();
        match (heads.is_empty(), isolated.is_empty()) {
            (true, true) => Occurrences::None,
            (true, false) => Occurrences::Finite(isolated),
            (false, _) => Occurrences::Infinite {
                isolated,
                heads,
                stride: -per,
            },
        }
    }
}

/// Where a pattern ends inside a left ray.
///
/// `Infinite` lists the isolated hits inside the transient region and, for
/// the periodic region, the topmost hit of each residue class; every
/// `head + n * stride` for `n >= 0` is a hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Occurrences {
    None,
    Finite(Vec<i64>),
    Infinite {
        isolated: Vec<i64>,
        heads: Vec<i64>,
        stride: i64,
    },
}

impl Occurrences {
    pub fn is_none(&self) -> bool {
        matches!(self, Occurrences::None)
    }

    /// Whether `j` is a hit.
    pub fn contains(&self, j: i64) -> bool {
        match self {
            Occurrences::None => false,
            Occurrences::Finite(v) => v.contains(&j),
            Occurrences::Infinite {
                isolated,
                heads,
                stride,
            } => {
                isolated.contains(&j)
                    || heads.iter().any(|&h| j <= h && (h - j) % stride.abs() == 0)
            }
        }
    }
}
