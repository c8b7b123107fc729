//! Pseudo cylinders, finitely defined sets and sliding block codes with
//! bounded memory and anticipation.
//!
//! Windows are evaluated over an abstract alphabet: the letters a rule
//! mentions, one stand-in [`FRESH`] for every other letter, and ø. Tables
//! are total over the ø-closed abstract windows, so the preimage classes of
//! a code partition the points by construction.

use crate::point::{BiPoint, PointError};
use crate::text::{fmt_letter, parse_letter};
use crate::words::{Cell, Letter, FRESH};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("the class of ø is not shift invariant: window {0} maps to ø but its right neighbour does not")]
    NotShiftInvariantEmptyClass(String),
    #[error("malformed rule: {0}")]
    BadRule(String),
    #[error(transparent)]
    Point(#[from] PointError),
}

/// `[b]_k^l`; a `None` entry is a gap matching any cell the point allows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoCylinder {
    pub cells: Vec<Option<Cell>>,
    pub start: i64,
}

impl PseudoCylinder {
    pub fn new(word: Vec<Cell>, start: i64) -> Self {
        PseudoCylinder {
            cells: word.into_iter().map(Some).collect(),
            start,
        }
    }

    pub fn end(&self) -> i64 {
        self.start + self.cells.len() as i64 - 1
    }

    pub fn least_memory(&self) -> i64 {
        -self.start.min(0)
    }

    pub fn least_anticipation(&self) -> i64 {
        self.end().max(0)
    }

    pub fn contains(&self, x: &BiPoint) -> bool {
        self.cells
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_none_or(|c| x.index(self.start + i as i64) == c))
    }

    /// Whether some point has these cells: no letter may follow a ø.
    fn satisfiable(&self) -> bool {
        let mut seen_empty = false;
        for c in self.cells.iter().flatten() {
            match c {
                None => seen_empty = true,
                Some(_) if seen_empty => return false,
                Some(_) => {}
            }
        }
        true
    }
}

impl fmt::Display for PseudoCylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|c| match c {
                None => "*".to_string(),
                Some(None) => "_".to_string(),
                Some(Some(a)) => fmt_letter(*a),
            })
            .collect();
        write!(f, "[{}]_{}^{}", cells.join(" "), self.start, self.end())
    }
}

/// `[b]_k^l ∩ [c]_m^n`: one cylinder over the hull with a gap between
/// separated windows, or nothing when the windows disagree.
pub fn pseudo_intersect(a: &PseudoCylinder, b: &PseudoCylinder) -> Vec<PseudoCylinder> {
    let lo = a.start.min(b.start);
    let hi = a.end().max(b.end());
    let mut cells: Vec<Option<Cell>> = vec![None; (hi - lo + 1) as usize];
    for p in [a, b] {
        for (i, c) in p.cells.iter().enumerate() {
            let slot = &mut cells[(p.start - lo) as usize + i];
            match (*slot, *c) {
                (_, None) => {}
                (None, Some(c)) => *slot = Some(c),
                (Some(x), Some(y)) if x == y => {}
                _ => return vec![],
            }
        }
    }
    let out = PseudoCylinder { cells, start: lo };
    if out.satisfiable() {
        vec![out]
    } else {
        vec![]
    }
}

/// Enumerates the ø-closed words of length `n` over `letters` followed by ø.
fn closed_windows(letters: &[Letter], n: usize) -> Vec<Vec<Cell>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &out {
            if w.last() == Some(&None) {
                let mut v = w.clone();
                v.push(None);
                next.push(v);
                continue;
            }
            for &a in letters {
                let mut v = w.clone();
                v.push(Some(a));
                next.push(v);
            }
            let mut v = w.clone();
            v.push(None);
            next.push(v);
        }
        out = next;
    }
    out
}

fn abstract_cell(mentioned: &BTreeSet<Letter>, c: Cell) -> Cell {
    c.map(|a| if mentioned.contains(&a) { a } else { FRESH })
}

/// A set decided by the window `[lo, hi]` through a finite abstract table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitelyDefinedSet {
    pub lo: i64,
    pub hi: i64,
    mentioned: BTreeSet<Letter>,
    members: BTreeSet<Vec<Cell>>,
}

impl FinitelyDefinedSet {
    pub fn from_pseudo(p: &PseudoCylinder) -> Self {
        let mentioned: BTreeSet<Letter> = p.cells.iter().flatten().flatten().copied().collect();
        let alphabet = Self::alphabet_of(&mentioned);
        let members = closed_windows(&alphabet, p.cells.len())
            .into_iter()
            .filter(|w| {
                w.iter()
                    .zip(&p.cells)
                    .all(|(c, want)| want.is_none_or(|want| *c == want))
            })
            .collect();
        FinitelyDefinedSet {
            lo: p.start,
            hi: p.end(),
            mentioned,
            members,
        }
    }

    fn alphabet_of(mentioned: &BTreeSet<Letter>) -> Vec<Letter> {
        mentioned.iter().copied().chain([FRESH]).collect()
    }

    pub fn contains(&self, x: &BiPoint) -> bool {
        let w: Vec<Cell> = x
            .cells(self.lo, self.hi)
            .into_iter()
            .map(|c| abstract_cell(&self.mentioned, c))
            .collect();
        self.members.contains(&w)
    }

    /// Verdict on an abstract window over a wider alphabet and window.
    fn decide(&self, lo: i64, w: &[Cell]) -> bool {
        let from = (self.lo - lo) as usize;
        let part: Vec<Cell> = w[from..from + (self.hi - self.lo + 1) as usize]
            .iter()
            .map(|&c| abstract_cell(&self.mentioned, c))
            .collect();
        self.members.contains(&part)
    }

    pub fn complement(&self) -> Self {
        let alphabet = Self::alphabet_of(&self.mentioned);
        let members = closed_windows(&alphabet, (self.hi - self.lo + 1) as usize)
            .into_iter()
            .filter(|w| !self.members.contains(w))
            .collect();
        FinitelyDefinedSet {
            members,
            ..self.clone()
        }
    }

    fn combine(sets: &[FinitelyDefinedSet], all: bool) -> Self {
        let lo = sets.iter().map(|s| s.lo).min().expect("at least one set");
        let hi = sets.iter().map(|s| s.hi).max().expect("at least one set");
        let mentioned: BTreeSet<Letter> = sets
            .iter()
            .flat_map(|s| s.mentioned.iter().copied())
            .collect();
        let alphabet = Self::alphabet_of(&mentioned);
        let members = closed_windows(&alphabet, (hi - lo + 1) as usize)
            .into_iter()
            .filter(|w| {
                let mut verdicts = sets.iter().map(|s| s.decide(lo, w));
                if all {
                    verdicts.all(|v| v)
                } else {
                    verdicts.any(|v| v)
                }
            })
            .collect();
        FinitelyDefinedSet {
            lo,
            hi,
            mentioned,
            members,
        }
    }

    pub fn union(sets: &[FinitelyDefinedSet]) -> Self {
        Self::combine(sets, false)
    }

    pub fn intersection(sets: &[FinitelyDefinedSet]) -> Self {
        Self::combine(sets, true)
    }

    /// Same subset of points, compared over the hull of both windows.
    pub fn same_set(&self, other: &FinitelyDefinedSet) -> bool {
        let a = Self::union(&[self.clone(), other.clone()]);
        let both = Self::intersection(&[self.clone(), other.clone()]);
        a.members == both.members
    }

    /// Whether every point lies in the set.
    pub fn is_everything(&self) -> bool {
        self.complement().members.is_empty()
    }

    /// The abstract windows in the set, with [`FRESH`] shown as `*`.
    pub fn member_windows(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&c| show_cell(c))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

fn show_cell(c: Cell) -> String {
    match c {
        None => "_".into(),
        Some(FRESH) => "*".into(),
        Some(a) => fmt_letter(a),
    }
}

/// A letter-to-letter map used inside copy outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterFn {
    /// `a -> ceil(a / 2)`.
    Halve,
}

impl LetterFn {
    pub fn apply(self, a: Letter) -> Letter {
        match self {
            LetterFn::Halve => a / 2 + a % 2,
        }
    }

    /// Every `a` with `apply(a) = b`.
    pub fn preimage(self, b: Letter) -> Vec<Letter> {
        match self {
            LetterFn::Halve if b == 0 => vec![0],
            LetterFn::Halve => [2 * b - 1, 2 * b]
                .into_iter()
                .filter(|&a| a < FRESH)
                .collect(),
        }
    }
}

/// The output of a rule on one window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Out {
    Letter(Letter),
    Empty,
    /// The window cell at offset `at`, passed through `chain` in order; ø stays ø.
    Map {
        chain: Vec<LetterFn>,
        at: i64,
    },
}

impl Out {
    fn eval(&self, window: &[Cell], memory: usize) -> Cell {
        match self {
            Out::Letter(a) => Some(*a),
            Out::Empty => None,
            Out::Map { chain, at } => window[(memory as i64 + at) as usize]
                .map(|a| chain.iter().fold(a, |a, f| f.apply(a))),
        }
    }
}

impl fmt::Display for Out {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Out::Letter(a) => write!(f, "{}", fmt_letter(*a)),
            Out::Empty => write!(f, "_"),
            Out::Map { chain, at } => {
                let mut s = format!("@{at}");
                for g in chain {
                    s = match g {
                        LetterFn::Halve => format!("half({s})"),
                    };
                }
                write!(f, "{s}")
            }
        }
    }
}

/// One cell of a clause window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WinCell {
    Is(Letter),
    /// `*`: any letter.
    Any,
    /// `_`: ø.
    Empty,
    /// `?`: any letter or ø.
    Wild,
}

impl WinCell {
    fn matches(self, c: Cell) -> bool {
        match self {
            WinCell::Is(a) => c == Some(a),
            WinCell::Any => c.is_some(),
            WinCell::Empty => c.is_none(),
            WinCell::Wild => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub window: Vec<WinCell>,
    pub out: Out,
}

pub fn parse_window(s: &str) -> Result<Vec<WinCell>, CodeError> {
    let bad = |m: &str| CodeError::BadRule(format!("{m} in window `{s}`"));
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => WinCell::Is(c.to_digit(10).unwrap() as Letter),
            '<' => {
                let mut num = String::from("<");
                for d in chars.by_ref() {
                    num.push(d);
                    if d == '>' {
                        break;
                    }
                }
                WinCell::Is(parse_letter(&num).map_err(|_| bad("bad letter"))?)
            }
            '*' => WinCell::Any,
            '_' => WinCell::Empty,
            '?' => WinCell::Wild,
            _ => return Err(bad("unexpected character")),
        });
    }
    Ok(out)
}

pub fn parse_out(s: &str) -> Result<Out, CodeError> {
    let s = s.trim();
    if s == "_" {
        return Ok(Out::Empty);
    }
    if let Some(inner) = s.strip_prefix("half(").and_then(|r| r.strip_suffix(')')) {
        return match parse_out(inner)? {
            Out::Map { mut chain, at } => {
                chain.push(LetterFn::Halve);
                Ok(Out::Map { chain, at })
            }
            Out::Letter(a) => Ok(Out::Letter(LetterFn::Halve.apply(a))),
            Out::Empty => Ok(Out::Empty),
        };
    }
    if let Some(j) = s.strip_prefix('@') {
        let at = j
            .trim()
            .replace('−', "-")
            .parse::<i64>()
            .map_err(|_| CodeError::BadRule(format!("bad offset `{s}`")))?;
        return Ok(Out::Map { chain: vec![], at });
    }
    parse_letter(s)
        .map(Out::Letter)
        .map_err(|_| CodeError::BadRule(format!("bad output `{s}`")))
}

/// JSON rule file: first matching clause wins, else `default`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFile {
    pub memory: usize,
    pub anticipation: usize,
    #[serde(default)]
    pub rules: Vec<RuleClause>,
    pub default: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleClause {
    pub window: String,
    pub out: String,
}

/// A validated sliding block code `(Φx)_n = rule(x_{n-k} … x_{n+l})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingBlockCode {
    memory: usize,
    anticipation: usize,
    mentioned: BTreeSet<Letter>,
    table: BTreeMap<Vec<Cell>, Out>,
}

impl SlidingBlockCode {
    pub fn build(
        memory: usize,
        anticipation: usize,
        clauses: &[Clause],
        default: Out,
    ) -> Result<Self, CodeError> {
        let width = memory + anticipation + 1;
        let mut mentioned = BTreeSet::new();
        for c in clauses
            .iter()
            .map(|c| (&c.window, &c.out))
            .chain([(&vec![], &default)])
        {
            for w in c.0 {
                if let WinCell::Is(a) = w {
                    mentioned.insert(*a);
                }
            }
            if let Out::Letter(a) = c.1 {
                mentioned.insert(*a);
            }
        }
        for c in clauses {
            if c.window.len() != width {
                return Err(CodeError::BadRule(format!(
                    "window length {} differs from {width}",
                    c.window.len()
                )));
            }
        }
        for out in clauses.iter().map(|c| &c.out).chain([&default]) {
            if let Out::Map { at, .. } = out {
                if *at < -(memory as i64) || *at > anticipation as i64 {
                    return Err(CodeError::BadRule(format!(
                        "offset {at} outside the window"
                    )));
                }
            }
        }
        let alphabet: Vec<Letter> = mentioned.iter().copied().chain([FRESH]).collect();
        let table = closed_windows(&alphabet, width)
            .into_iter()
            .map(|w| {
                let out = clauses
                    .iter()
                    .find(|c| c.window.iter().zip(&w).all(|(p, &x)| p.matches(x)))
                    .map_or(&default, |c| &c.out)
                    .clone();
                (w, out)
            })
            .collect();
        let code = SlidingBlockCode {
            memory,
            anticipation,
            mentioned,
            table,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn from_rule_file(r: &RuleFile) -> Result<Self, CodeError> {
        let clauses = r
            .rules
            .iter()
            .map(|c| {
                Ok(Clause {
                    window: parse_window(&c.window)?,
                    out: parse_out(&c.out)?,
                })
            })
            .collect::<Result<Vec<_>, CodeError>>()?;
        Self::build(r.memory, r.anticipation, &clauses, parse_out(&r.default)?)
    }

    pub fn identity() -> Self {
        Self::build(
            0,
            0,
            &[],
            Out::Map {
                chain: vec![],
                at: 0,
            },
        )
        .expect("valid")
    }

    /// The shift map as a code with memory 0 and anticipation 1.
    pub fn shift() -> Self {
        Self::build(
            0,
            1,
            &[],
            Out::Map {
                chain: vec![],
                at: 1,
            },
        )
        .expect("valid")
    }

    /// `a -> ceil(a / 2)` letterwise, ø to ø.
    pub fn halving() -> Self {
        Self::build(
            0,
            0,
            &[],
            Out::Map {
                chain: vec![LetterFn::Halve],
                at: 0,
            },
        )
        .expect("valid")
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    fn width(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    fn alphabet(&self) -> Vec<Letter> {
        self.mentioned.iter().copied().chain([FRESH]).collect()
    }

    fn out_for(&self, w: &[Cell]) -> &Out {
        let key: Vec<Cell> = w
            .iter()
            .map(|&c| abstract_cell(&self.mentioned, c))
            .collect();
        &self.table[&key]
    }

    /// The output letter on a concrete window of length `k + l + 1`.
    pub fn eval(&self, w: &[Cell]) -> Cell {
        self.out_for(w).eval(w, self.memory)
    }

    fn validate(&self) -> Result<(), CodeError> {
        for w in closed_windows(&self.alphabet(), self.width() + 1) {
            let here = self.table[&w[..self.width()]].eval(&w[..self.width()], self.memory);
            let next = self.table[&w[1..]].eval(&w[1..], self.memory);
            if here.is_none() && next.is_some() {
                return Err(CodeError::NotShiftInvariantEmptyClass(
                    w.iter()
                        .map(|&c| show_cell(c))
                        .collect::<Vec<_>>()
                        .join(" "),
                ));
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &BiPoint) -> Result<BiPoint, CodeError> {
        Ok(x.map_windows(self.memory, self.anticipation, |w| self.eval(w))?)
    }

    /// The constant letter of `Φ(Ø)`.
    pub fn on_empty(&self) -> Cell {
        self.eval(&vec![None; self.width()])
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &SlidingBlockCode) -> SlidingBlockCode {
        let memory = self.memory + inner.memory;
        let anticipation = self.anticipation + inner.anticipation;
        let mut mentioned = inner.mentioned.clone();
        for out in inner.table.values() {
            if let Out::Map { chain, .. } = out {
                for &b in &self.mentioned {
                    mentioned.extend(chain_preimage(chain, b));
                }
            }
        }
        mentioned.extend(&self.mentioned);
        let alphabet: Vec<Letter> = mentioned.iter().copied().chain([FRESH]).collect();
        let width = memory + anticipation + 1;
        let table = closed_windows(&alphabet, width)
            .into_iter()
            .map(|w| {
                // Inner outputs at offsets -self.memory ..= self.anticipation.
                let mid: Vec<(Cell, &Out, usize)> = (0..self.width())
                    .map(|j| {
                        let sub = &w[j..j + inner.width()];
                        let o = inner.out_for(sub);
                        let cell = if copies_fresh(o, sub, inner.memory) {
                            Some(FRESH)
                        } else {
                            o.eval(sub, inner.memory)
                        };
                        (cell, o, j)
                    })
                    .collect();
                let key: Vec<Cell> = mid
                    .iter()
                    .map(|m| abstract_cell(&self.mentioned, m.0))
                    .collect();
                let out = match &self.table[&key] {
                    Out::Map { chain, at } => {
                        let (_, o, j) = &mid[(self.memory as i64 + at) as usize];
                        match o {
                            Out::Map { chain: c0, at: a0 } => Out::Map {
                                chain: c0.iter().chain(chain).copied().collect(),
                                at: *j as i64 - self.memory as i64 + a0,
                            },
                            Out::Letter(a) => Out::Letter(chain.iter().fold(*a, |a, f| f.apply(a))),
                            Out::Empty => Out::Empty,
                        }
                    }
                    other => other.clone(),
                };
                (w, out)
            })
            .collect();
        SlidingBlockCode {
            memory,
            anticipation,
            mentioned,
            table,
        }
    }

    /// Checks the sufficient condition for continuity: `Φ(Ø) = Ø` and every
    /// nonempty class `C_a` is one pseudo cylinder `[c]_{-k_a}^{L}` with
    /// `k_a >= 0`, a common right end `L` and a non-ø last cell.
    pub fn check_continuity(&self) -> Continuity {
        let fail = |reason: &str| Continuity {
            passes: false,
            reason: Some(reason.to_string()),
            right_end: None,
        };
        if self.on_empty().is_some() {
            return fail("Phi(Ø) is not Ø");
        }
        let windows: Vec<(&Vec<Cell>, &Out)> = self.table.iter().collect();
        if windows
            .iter()
            .any(|(_, o)| matches!(o, Out::Map { chain, .. } if !chain.is_empty()))
        {
            return fail("C_a not a single pseudo cylinder");
        }
        // Targets: concrete output letters, and `None` for an unmentioned letter.
        // Each member window with the position it copies from, if any.
        type Class<'a> = Vec<(&'a Vec<Cell>, Option<usize>)>;
        let mut classes: BTreeMap<Option<Letter>, Class> = BTreeMap::new();
        for (w, o) in &windows {
            match o {
                Out::Letter(a) => classes.entry(Some(*a)).or_default().push((w, None)),
                Out::Map { at, .. } => {
                    let pos = (self.memory as i64 + at) as usize;
                    match w[pos] {
                        Some(FRESH) => classes.entry(None).or_default().push((w, Some(pos))),
                        Some(a) => classes.entry(Some(a)).or_default().push((w, None)),
                        None => {}
                    }
                }
                Out::Empty => {}
            }
        }
        let alphabet = self.alphabet();
        let mut right_end = None;
        for members in classes.values() {
            let copy_pos: BTreeSet<Option<usize>> = members.iter().map(|m| m.1).collect();
            if copy_pos.len() > 1 {
                return fail("C_a not a single pseudo cylinder");
            }
            let copy = *copy_pos.first().expect("nonempty class");
            let fixed: Vec<Option<Letter>> = (0..self.width())
                .map(|i| {
                    if Some(i) == copy {
                        return Some(FRESH);
                    }
                    let first = members[0].0[i];
                    let same = members.iter().all(|m| m.0[i] == first);
                    first.filter(|&a| same && a != FRESH)
                })
                .collect();
            let expected = closed_windows(&alphabet, self.width())
                .into_iter()
                .filter(|w| {
                    fixed
                        .iter()
                        .zip(w)
                        .all(|(f, c)| f.is_none_or(|f| *c == Some(f)))
                })
                .count();
            let positions: Vec<usize> = (0..self.width()).filter(|&i| fixed[i].is_some()).collect();
            let (Some(&p), Some(&q)) = (positions.first(), positions.last()) else {
                return fail("C_a not a single pseudo cylinder");
            };
            let contiguous = positions.len() == q - p + 1;
            if expected != members.len() || !contiguous || p > self.memory {
                return fail("C_a not a single pseudo cylinder");
            }
            let l = q as i64 - self.memory as i64;
            if right_end.is_some_and(|r| r != l) {
                return fail("classes have different right ends");
            }
            right_end = Some(l);
        }
        Continuity {
            passes: true,
            reason: None,
            right_end,
        }
    }

    /// Clauses reproducing the table, one per abstract window with a non-ø
    /// output, `*` standing for an unmentioned letter.
    pub fn table_rows(&self) -> Vec<(String, String)> {
        self.table
            .iter()
            .map(|(w, o)| {
                (
                    w.iter()
                        .map(|&c| show_cell(c))
                        .collect::<Vec<_>>()
                        .join(" "),
                    o.to_string(),
                )
            })
            .collect()
    }
}

/// An unmentioned input letter stays unmentioned through the chain, since
/// the mentioned set is closed under chain preimages.
fn copies_fresh(o: &Out, w: &[Cell], memory: usize) -> bool {
    matches!(o, Out::Map { at, .. } if w[(memory as i64 + at) as usize] == Some(FRESH))
}

/// Letters sent into `b` by applying `chain` in order.
fn chain_preimage(chain: &[LetterFn], b: Letter) -> Vec<Letter> {
    chain.iter().rev().fold(vec![b], |acc, f| {
        acc.into_iter().flat_map(|x| f.preimage(x)).collect()
    })
}

/// Outcome of the sufficient continuity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Continuity {
    pub passes: bool,
    pub reason: Option<String>,
    /// The common right end `L` of the classes when the check passes.
    pub right_end: Option<i64>,
}
