//! Shift spaces defined by finite forbidden specifications.
//!
//! `X_F` holds the bi-infinite points avoiding every forbidden word and every
//! forbidden left tail (and, under an allowlist, whose left tail is eventually
//! periodic with an allowed period), together with the finite points whose
//! ending ray has infinitely many one-letter extensions, and Ø when the
//! infinite part is infinite.

pub(crate) mod engine;
mod minimal;

pub use minimal::{
    equal_spaces, is_minimal, minimalize, Equality, MinimalityWitness, Parent, Witness,
};

use crate::point::BiPoint;
use crate::topology::Cylinder;
use crate::words::{primitive_root_len, Cell, LeftRay, Letter, PatCell, Pattern, FRESH};
use engine::{Engine, State};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("cutoff {cutoff} must exceed every mentioned letter (need at least {needed})")]
    CutoffTooSmall { cutoff: Letter, needed: Letter },
    #[error("the given word or ray is not in the language of the space")]
    NotInLanguage,
    #[error("minimality is not defined for specifications with a tail allowlist")]
    AllowlistUnsupported,
    #[error("unsupported query: {0}")]
    Unsupported(String),
}

/// Finite data `F = F' ∪ F''`: word patterns, exact forbidden tails and an
/// optional allowlist of left-tail periods.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ForbiddenSpec {
    words: Vec<Pattern>,
    tails: Vec<LeftRay>,
    allow_tails: Option<Vec<Vec<Letter>>>,
}

impl ForbiddenSpec {
    /// Sorts and deduplicates every part; tails are re-anchored at 0 and
    /// allowlist periods reduced to primitive roots.
    pub fn new(
        words: Vec<Pattern>,
        tails: Vec<LeftRay>,
        allow_tails: Option<Vec<Vec<Letter>>>,
    ) -> Self {
        let words: BTreeSet<Pattern> = words.into_iter().collect();
        let tails: BTreeSet<LeftRay> = tails.into_iter().map(|r| r.with_end(0)).collect();
        let allow_tails = allow_tails.map(|a| {
            let set: BTreeSet<Vec<Letter>> = a
                .into_iter()
                .filter(|p| !p.is_empty())
                .map(|p| p[..primitive_root_len(&p)].to_vec())
                .collect();
            set.into_iter().collect()
        });
        ForbiddenSpec {
            words: words.into_iter().collect(),
            tails: tails.into_iter().collect(),
            allow_tails,
        }
    }

    pub fn words(words: Vec<Pattern>) -> Self {
        ForbiddenSpec::new(words, vec![], None)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.words
    }

    pub fn tails(&self) -> &[LeftRay] {
        &self.tails
    }

    pub fn allow_tails(&self) -> Option<&[Vec<Letter>]> {
        self.allow_tails.as_deref()
    }

    /// Every letter named by a pattern, an exception set, a tail or the allowlist.
    pub fn mentioned(&self) -> BTreeSet<Letter> {
        let mut m: BTreeSet<Letter> = self.words.iter().flat_map(|p| p.letters()).collect();
        m.extend(self.tails.iter().flat_map(|r| r.letters()));
        if let Some(a) = &self.allow_tails {
            m.extend(a.iter().flatten().copied());
        }
        m
    }

    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(Pattern::len).max().unwrap_or(0)
    }
}

/// Classification flags of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub row_finite: bool,
    pub column_finite: bool,
    /// `Some(M)` when the space is presented by words of length at most `M + 1`.
    pub m_step: Option<usize>,
    pub finite_type: bool,
}

/// What a follower or predecessor set is taken of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Context {
    Word(Vec<Cell>),
    Ray(LeftRay),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Members over letters below the cutoff and an exact verdict on whether
/// the whole set is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowerSet {
    pub members: Vec<Vec<Cell>>,
    pub infinite: bool,
}

/// A validated specification with its decision automaton.
#[derive(Debug, Clone)]
pub struct Space {
    spec: ForbiddenSpec,
    engine: Engine,
}

impl Space {
    pub fn new(spec: ForbiddenSpec) -> Self {
        let engine = Engine::new(
            spec.words.clone(),
            spec.tails.clone(),
            spec.allow_tails.clone(),
        );
        Space { spec, engine }
    }

    pub(crate) fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn spec(&self) -> &ForbiddenSpec {
        &self.spec
    }

    pub fn mentioned(&self) -> &BTreeSet<Letter> {
        &self.engine.mentioned
    }

    /// Smallest letter no part of the specification names.
    pub fn first_fresh(&self) -> Letter {
        (0..)
            .find(|a| !self.engine.mentioned.contains(a))
            .expect("mentioned letters are finite")
    }

    pub fn check_cutoff(&self, cutoff: Letter) -> Result<(), SpaceError> {
        let needed = self
            .engine
            .mentioned
            .iter()
            .next_back()
            .map_or(1, |m| m + 1);
        if cutoff < needed {
            return Err(SpaceError::CutoffTooSmall { cutoff, needed });
        }
        Ok(())
    }

    pub fn inf_nonempty(&self) -> bool {
        !self.engine.trim.is_empty()
    }

    /// `|X^inf| = ∞`.
    pub fn inf_infinite(&self) -> bool {
        self.engine.inf_infinite
    }

    /// Whether the space uses infinitely many letters.
    pub fn letters_infinite(&self) -> bool {
        self.engine.word_in_lang(&[FRESH])
    }

    pub fn contains(&self, x: &BiPoint) -> bool {
        match x {
            BiPoint::Empty => self.inf_infinite(),
            BiPoint::Finite(r) => self.inf_infinite() && self.has_iep(r),
            BiPoint::Infinite(t) => {
                let (p, q) = (t.left().len() as i64, t.right().len() as i64);
                let body_end = t.start() + t.body().len() as i64 - 1;
                let window = self.spec.max_word_len() as i64;
                let r = x
                    .tail_ray(body_end + q + window)
                    .expect("infinite points have every tail");
                if !self.spec.words.iter().all(|w| r.occurrences(w).is_none()) {
                    return false;
                }
                let r = x
                    .tail_ray(body_end + self.engine.t_max as i64 + p + q + 1)
                    .expect("infinite points have every tail");
                if self.spec.tails.iter().any(|f| r.contains_tail(f)) {
                    return false;
                }
                self.spec
                    .allow_tails
                    .as_ref()
                    .is_none_or(|a| a.iter().any(|per| crate::words::conjugate(per, t.left())))
            }
        }
    }

    /// `|F_1(X^inf, r)| = ∞` for the ray `r`.
    pub fn has_iep(&self, r: &LeftRay) -> bool {
        self.engine
            .ray_state(r)
            .and_then(|s| self.engine.step(&s, FRESH))
            .is_some_and(|s| self.engine.is_alive(&s))
    }

    /// Whether `w` (ø-closed, over the extended alphabet) lies in `B(X_F)`.
    pub fn in_language(&self, w: &[Cell]) -> bool {
        let split = w.iter().position(Option::is_none).unwrap_or(w.len());
        if w[split..].iter().any(Option::is_some) {
            return false;
        }
        let u: Vec<Letter> = w[..split].iter().flatten().copied().collect();
        if split == w.len() {
            return self.engine.word_in_lang(&u);
        }
        self.inf_infinite()
            && (u.is_empty() || self.engine.word_in_lang(&[u, vec![FRESH]].concat()))
    }

    /// `B_n(X_F)` over letters below `cutoff`, sorted with ø after every letter.
    pub fn blocks(&self, n: usize, cutoff: Letter) -> Result<Vec<Vec<Cell>>, SpaceError> {
        self.check_cutoff(cutoff)?;
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.blocks_dfs(&self.engine.all_trim(), n, cutoff, &mut word, &mut out);
        Ok(out)
    }

    fn blocks_dfs(
        &self,
        set: &BTreeSet<usize>,
        n: usize,
        cutoff: Letter,
        word: &mut Vec<Cell>,
        out: &mut Vec<Vec<Cell>>,
    ) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for a in 0..cutoff {
            let next = self.engine.run(set, &[a]);
            if !next.is_empty() {
                word.push(Some(a));
                self.blocks_dfs(&next, n, cutoff, word, out);
                word.pop();
            }
        }
        let tail_ok =
            self.inf_infinite() && (word.is_empty() || !self.engine.run(set, &[FRESH]).is_empty());
        if tail_ok {
            let mut w = word.clone();
            w.resize(n, None);
            out.push(w);
        }
    }

    /// The state after reading the ray, if the ray is a left-infinite subblock.
    fn live_ray_state(&self, r: &LeftRay) -> Option<State> {
        self.engine.ray_state(r).filter(|s| self.engine.is_alive(s))
    }

    /// Whether the ray is a left-infinite subblock of some point.
    pub fn ray_in_language(&self, r: &LeftRay) -> bool {
        self.live_ray_state(r).is_some()
    }

    /// `F_k` or `P_k` of a word or a ray, listed over letters below `cutoff`.
    pub fn follower_set(
        &self,
        ctx: &Context,
        k: usize,
        dir: Direction,
        cutoff: Letter,
    ) -> Result<FollowerSet, SpaceError> {
        self.check_cutoff(cutoff)?;
        let mut letters: Vec<Cell> = (0..cutoff).map(Some).collect();
        letters.push(Some(FRESH));
        letters.push(None);
        let mut accepted: Vec<Vec<Cell>> = Vec::new();
        match (ctx, dir) {
            (Context::Word(w), _) => {
                if !self.in_language(w) {
                    return Err(SpaceError::NotInLanguage);
                }
                let fwd = dir == Direction::Forward;
                let ok = |b: &[Cell]| {
                    let joined: Vec<Cell> = if fwd {
                        [w, b].concat()
                    } else {
                        [b, w].concat()
                    };
                    self.in_language(&joined)
                };
                grow(&letters, k, fwd, &ok, &mut Vec::new(), &mut accepted);
            }
            (Context::Ray(r), Direction::Forward) => {
                let s = self.live_ray_state(r).ok_or(SpaceError::NotInLanguage)?;
                let ok = |b: &[Cell]| self.ray_extends(&s, b);
                grow(&letters, k, true, &ok, &mut Vec::new(), &mut accepted);
            }
            (Context::Ray(_), Direction::Backward) => {
                return Err(SpaceError::Unsupported("predecessor sets of rays".into()));
            }
        }
        let infinite = accepted.iter().any(|b| b.contains(&Some(FRESH)));
        let mut members: Vec<Vec<Cell>> = accepted
            .into_iter()
            .filter(|b| !b.contains(&Some(FRESH)))
            .collect();
        members.sort_by_key(|b| cell_key(b));
        Ok(FollowerSet { members, infinite })
    }

    /// Whether the ray behind state `s`, followed by `b`, is a left-infinite subblock.
    fn ray_extends(&self, s: &State, b: &[Cell]) -> bool {
        let split = b.iter().position(Option::is_none).unwrap_or(b.len());
        if b[split..].iter().any(Option::is_some) {
            return false;
        }
        let mut cur = s.clone();
        for a in b[..split].iter().flatten() {
            match self.engine.step(&cur, self.engine.abstract_letter(*a)) {
                Some(t) => cur = t,
                None => return false,
            }
        }
        if split == b.len() {
            return self.engine.is_alive(&cur);
        }
        self.inf_infinite()
            && self
                .engine
                .step(&cur, FRESH)
                .is_some_and(|t| self.engine.is_alive(&t))
    }

    pub fn classify(&self) -> Classification {
        let e = &self.engine;
        let row_finite = !e.alphabet.iter().any(|&a| e.word_in_lang(&[a, FRESH]));
        let column_finite = !e.alphabet.iter().any(|&a| e.word_in_lang(&[FRESH, a]));
        let plain = self.spec.tails.is_empty() && self.spec.allow_tails.is_none();
        let m_step = plain.then(|| self.spec.max_word_len().saturating_sub(1));
        let finite_type = plain && !self.spec.words.iter().any(Pattern::has_wildcard);
        Classification {
            row_finite,
            column_finite,
            m_step,
            finite_type,
        }
    }

    /// An infinite point of the space inside `Z(r, F)`, if one exists.
    pub fn witness_in_cylinder(&self, c: &Cylinder) -> Option<BiPoint> {
        let s0 = self.engine.ray_state(&c.base)?;
        let fresh = (0..)
            .find(|a| !self.engine.mentioned.contains(a) && !c.excluded.contains(a))
            .expect("finite sets leave letters free");
        let concrete = |a: Letter| if a == FRESH { fresh } else { a };
        let first = self
            .engine
            .alphabet
            .iter()
            .filter(|&&a| a == FRESH || !c.excluded.contains(&a));
        for &a in first {
            let Some(s1) = self.engine.step(&s0, a) else {
                continue;
            };
            let (_, alive) = self.engine.explore(std::slice::from_ref(&s1));
            if !alive.contains(&s1) {
                continue;
            }
            let mut seen: Vec<State> = vec![s1.clone()];
            let mut letters = vec![concrete(a)];
            let mut cur = s1;
            loop {
                let (b, t) = self
                    .engine
                    .alphabet
                    .iter()
                    .find_map(|&b| {
                        self.engine
                            .step(&cur, b)
                            .filter(|t| alive.contains(t))
                            .map(|t| (b, t))
                    })
                    .expect("alive states have an alive successor");
                if let Some(i) = seen.iter().position(|s| *s == t) {
                    // Positions after the i-th state repeat forever.
                    letters.push(concrete(b));
                    let (u, q) = letters.split_at(i + 1);
                    return BiPoint::from_ray(&c.base, u, q).ok();
                }
                letters.push(concrete(b));
                seen.push(t.clone());
                cur = t;
            }
        }
        None
    }
}

/// Sort key placing ø after every letter.
pub fn cell_key(w: &[Cell]) -> Vec<(bool, Letter)> {
    w.iter().map(|c| (c.is_none(), c.unwrap_or(0))).collect()
}

/// Depth-first growth of ø-closed words of length `k`, one cell at a time on
/// the chosen side, keeping only partial words accepted by `ok`.
fn grow(
    letters: &[Cell],
    k: usize,
    fwd: bool,
    ok: &dyn Fn(&[Cell]) -> bool,
    cur: &mut Vec<Cell>,
    out: &mut Vec<Vec<Cell>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for &c in letters {
        // ø-closure: forward growth cannot place a letter after ø, backward growth cannot place ø before a letter.
        if fwd && cur.last() == Some(&None) && c.is_some() {
            continue;
        }
        if !fwd && c.is_none() && cur.first().is_some_and(Option::is_some) {
            continue;
        }
        if fwd {
            cur.push(c);
        } else {
            cur.insert(0, c);
        }
        if ok(cur) {
            grow(letters, k, fwd, ok, cur, out);
        }
        if fwd {
            cur.pop();
        } else {
            cur.remove(0);
        }
    }
}

/// The letters a single-cell pattern admits, written as a pattern over `alphabet`.
pub fn single_letter_pattern(alphabet: &BTreeSet<Letter>) -> Pattern {
    Pattern::new(vec![PatCell::AnyExcept(alphabet.clone())]).expect("one cell")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{fmt_word, parse_pattern, parse_point, parse_ray, parse_word};

    fn words(ws: &[&str]) -> Space {
        Space::new(ForbiddenSpec::words(
            ws.iter().map(|w| parse_pattern(w).unwrap()).collect(),
        ))
    }

    fn fmt_all(bs: &[Vec<Cell>]) -> Vec<String> {
        bs.iter().map(|b| fmt_word(b)).collect()
    }

    #[test]
    fn golden_mean_membership() {
        let s = words(&["11"]);
        assert!(!s.contains(&parse_point("(0)^- . (1)^+").unwrap()));
        assert!(s.contains(&parse_point("(01)^- . (01)^+").unwrap()));
        assert!(s.contains(&parse_point("(0)^- 1 . #").unwrap()));
        assert!(s.contains(&BiPoint::Empty));
    }

    #[test]
    fn block_examples() {
        let s = words(&["11"]);
        let b = fmt_all(&s.blocks(2, 3).unwrap());
        assert_eq!(
            b,
            ["0 0", "0 1", "0 2", "0 _", "1 0", "1 2", "1 _", "2 0", "2 1", "2 2", "2 _", "_ _"]
        );
        assert_eq!(fmt_all(&words(&[]).blocks(1, 2).unwrap()), ["0", "1", "_"]);
        assert_eq!(
            fmt_all(&words(&["*2"]).blocks(1, 4).unwrap()),
            ["0", "1", "3", "_"]
        );
        assert_eq!(
            s.blocks(1, 1),
            Err(SpaceError::CutoffTooSmall {
                cutoff: 1,
                needed: 2
            })
        );
    }

    #[test]
    fn follower_examples() {
        let s = words(&["11"]);
        let f = s
            .follower_set(
                &Context::Word(parse_word("1").unwrap()),
                1,
                Direction::Forward,
                3,
            )
            .unwrap();
        assert!(f.infinite);
        assert_eq!(fmt_all(&f.members), ["0", "2", "_"]);
        let r = parse_ray("(0)^- 1 @0").unwrap();
        let f = s
            .follower_set(&Context::Ray(r), 1, Direction::Forward, 3)
            .unwrap();
        assert_eq!(fmt_all(&f.members), ["0", "2", "_"]);
        let a = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        let r = parse_ray("(0)^- @0").unwrap();
        assert_eq!(
            a.follower_set(&Context::Ray(r), 1, Direction::Forward, 3),
            Err(SpaceError::NotInLanguage)
        );
    }

    #[test]
    fn iep_examples() {
        let s = words(&["11"]);
        assert!(s.has_iep(&parse_ray("(0)^- 1 @0").unwrap()));
        let a = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        assert!(a.has_iep(&parse_ray("(1)^- 0 2 @0").unwrap()));
        assert!(!a.has_iep(&parse_ray("(0)^- @0").unwrap()));
        // Only 0 and 1 are usable, so no ray has infinitely many followers.
        let f = Space::new(ForbiddenSpec::new(
            vec![parse_pattern("!{0,1}").unwrap()],
            vec![],
            Some(vec![vec![1]]),
        ));
        assert!(!f.has_iep(&parse_ray("(1)^- 0 @0").unwrap()));
    }

    #[test]
    fn classification_examples() {
        let c = words(&["11"]).classify();
        assert_eq!(
            (c.row_finite, c.column_finite, c.m_step, c.finite_type),
            (false, false, Some(1), true)
        );
        let c = words(&["*2"]).classify();
        assert_eq!((c.m_step, c.finite_type), (Some(1), false));
        let a = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        assert_eq!(a.classify().m_step, None);
    }

    #[test]
    fn tails_and_allowlists() {
        let s = Space::new(ForbiddenSpec::new(
            vec![],
            vec![parse_ray("(1)^-").unwrap()],
            None,
        ));
        assert!(!s.contains(&parse_point("(1)^- 0 . (2)^+").unwrap()));
        assert!(s.contains(&parse_point("(0)^- . (1)^+").unwrap()));
        let a = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        assert!(a.contains(&parse_point("(1)^- 0 . (2)^+").unwrap()));
        assert!(!a.contains(&parse_point("(2)^- . (1)^+").unwrap()));
        assert!(a.contains(&BiPoint::Empty));
    }

    #[test]
    fn witnesses_live_in_cylinders() {
        let s = words(&["11"]);
        let c = Cylinder::new(parse_ray("(0)^- 1 @0").unwrap(), [0, 2]);
        let y = s.witness_in_cylinder(&c).unwrap();
        assert!(c.contains(&y) && s.contains(&y));
    }
}
