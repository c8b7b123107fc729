//! Minimality of forbidden specifications and bounded equality of spaces.

use super::{cell_key, ForbiddenSpec, Space, SpaceError};
use crate::words::{Cell, LeftRay, Letter, PatCell, Pattern, FRESH};
use itertools::Itertools;
use std::collections::{BTreeSet, HashSet, VecDeque};

/// Which member of the specification the offending word sits in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parent {
    Word(Pattern),
    Tail(LeftRay),
    /// Some left tail outside the allowlist.
    DisallowedTail,
}

/// A proper subblock of a forbidden member that is not in the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityWitness {
    pub word: Vec<Letter>,
    pub parent: Parent,
}

/// Abstract letters a cell admits: mentioned letters and [`FRESH`].
fn choices(c: &PatCell, alphabet: &[Letter]) -> Vec<Letter> {
    alphabet.iter().copied().filter(|&a| c.matches(a)).collect()
}

fn instances(cells: &[PatCell], alphabet: &[Letter]) -> Vec<Vec<Letter>> {
    cells
        .iter()
        .map(|c| choices(c, alphabet))
        .multi_cartesian_product()
        .collect()
}

impl Space {
    fn alphabet(&self) -> Vec<Letter> {
        self.engine.alphabet.clone()
    }

    fn concrete(&self, w: &[Letter]) -> Vec<Letter> {
        let fresh = self.first_fresh();
        w.iter()
            .map(|&a| if a == FRESH { fresh } else { a })
            .collect()
    }

    /// Length of the shortest suffix window of `f` outside the language.
    fn first_bad_window(&self, f: &LeftRay) -> Option<usize> {
        let e = &self.engine;
        let mut sets = vec![e.all_trim()];
        loop {
            let next = e.run(sets.last().unwrap(), f.period());
            if sets.contains(&next) {
                break;
            }
            sets.push(next);
        }
        let bound = (sets.len() + 1) * f.period().len() + f.transient().len();
        (1..=bound).find(|&n| !e.word_in_lang(&f.expand(n)))
    }

    /// Shortest word over the abstract alphabet outside the language.
    fn first_missing_word(&self) -> Option<Vec<Letter>> {
        let e = &self.engine;
        let start = e.all_trim();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, Vec::new())]);
        while let Some((set, w)) = queue.pop_front() {
            for &a in &e.alphabet {
                let next = e.run(&set, &[a]);
                let mut v: Vec<Letter> = w.clone();
                v.push(a);
                if next.is_empty() {
                    return Some(v);
                }
                if seen.insert(next.clone()) {
                    queue.push_back((next, v));
                }
            }
        }
        None
    }

    /// Minimal factors of `w` outside the language.
    fn minimal_bad_factors(&self, w: &[Letter]) -> BTreeSet<Vec<Letter>> {
        let mut out = BTreeSet::new();
        for len in 1..=w.len() {
            for u in w.windows(len) {
                let bad = !self.engine.word_in_lang(u);
                let proper_bad = (1..len).any(|l| u.windows(l).any(|v| out.contains(v)));
                if bad && !proper_bad {
                    out.insert(u.to_vec());
                }
            }
        }
        out
    }
}

/// `Ok(None)` when every proper subblock of every member lies in the language.
pub fn is_minimal(space: &Space) -> Result<Option<MinimalityWitness>, SpaceError> {
    let alphabet = space.alphabet();
    for p in space.spec().patterns() {
        let n = p.len();
        let mut subs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| j - i < n)
            .collect();
        subs.sort_by_key(|&(i, j)| {
            (
                p.cells()[i..j].iter().filter(|c| c.is_wild()).count(),
                j - i,
                i,
            )
        });
        for (i, j) in subs {
            if let Some(u) = instances(&p.cells()[i..j], &alphabet)
                .into_iter()
                .find(|u| !space.engine.word_in_lang(u))
            {
                return Ok(Some(MinimalityWitness {
                    word: space.concrete(&u),
                    parent: Parent::Word(p.clone()),
                }));
            }
        }
    }
    for f in space.spec().tails() {
        if let Some(n) = space.first_bad_window(f) {
            return Ok(Some(MinimalityWitness {
                word: f.expand(n),
                parent: Parent::Tail(f.clone()),
            }));
        }
    }
    if space.spec().allow_tails().is_some() {
        if let Some(u) = space.first_missing_word() {
            return Ok(Some(MinimalityWitness {
                word: space.concrete(&u),
                parent: Parent::DisallowedTail,
            }));
        }
    }
    Ok(None)
}

/// A minimal specification defining the same space: every word member is
/// replaced by its minimal factors outside the language, and every tail with
/// a bad window by the minimal bad factors of its shortest bad window.
pub fn minimalize(space: &Space) -> Result<ForbiddenSpec, SpaceError> {
    if space.spec().allow_tails().is_some() {
        return Err(SpaceError::AllowlistUnsupported);
    }
    let alphabet = space.alphabet();
    let mut bad: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for p in space.spec().patterns() {
        for w in instances(p.cells(), &alphabet) {
            bad.extend(space.minimal_bad_factors(&w));
        }
    }
    let mut tails = Vec::new();
    for f in space.spec().tails() {
        match space.first_bad_window(f) {
            Some(n) => bad.extend(space.minimal_bad_factors(&f.expand(n))),
            None => tails.push(f.clone()),
        }
    }
    // Drop words containing another bad word.
    let all = bad.clone();
    bad.retain(|w| {
        !all.iter()
            .any(|v| v != w && v.len() <= w.len() && w.windows(v.len()).any(|x| x == v.as_slice()))
    });
    let mentioned = space.mentioned().clone();
    let words = compress(bad, &mentioned);
    Ok(ForbiddenSpec::new(words, tails, None))
}

/// Merges abstract words differing in one position into wildcard cells.
fn compress(words: BTreeSet<Vec<Letter>>, mentioned: &BTreeSet<Letter>) -> Vec<Pattern> {
    let mut sets: BTreeSet<Vec<BTreeSet<Letter>>> = words
        .into_iter()
        .map(|w| w.into_iter().map(|a| BTreeSet::from([a])).collect())
        .collect();
    loop {
        let list: Vec<_> = sets.iter().cloned().collect();
        let merge = list.iter().tuple_combinations().find_map(|(a, b)| {
            if a.len() != b.len() {
                return None;
            }
            let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
            let [i] = diff[..] else { return None };
            let union: BTreeSet<Letter> = a[i].union(&b[i]).copied().collect();
            union.contains(&FRESH).then(|| {
                let mut m = a.clone();
                m[i] = union;
                (a.clone(), b.clone(), m)
            })
        });
        match merge {
            Some((a, b, m)) => {
                sets.remove(&a);
                sets.remove(&b);
                sets.insert(m);
            }
            None => break,
        }
    }
    sets.into_iter()
        .map(|cells| {
            let cells = cells
                .into_iter()
                .map(|s| {
                    if !s.contains(&FRESH) {
                        return PatCell::Is(*s.first().expect("nonempty cell"));
                    }
                    let rest: BTreeSet<Letter> = mentioned.difference(&s).copied().collect();
                    if rest.is_empty() {
                        PatCell::Any
                    } else {
                        PatCell::AnyExcept(rest)
                    }
                })
                .collect();
            Pattern::new(cells).expect("nonempty word")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Word(Vec<Cell>),
    Ray(LeftRay),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equality {
    EqualUpToBudget,
    Differ(Witness),
}

/// Canonical rays over letters below `cutoff` with period and transient
/// lengths at most `budget`, by period length, period, transient length,
/// transient.
fn rays(budget: usize, cutoff: Letter) -> Vec<LeftRay> {
    let words = |n: usize| {
        (0..n)
            .map(|_| 0..cutoff)
            .multi_cartesian_product()
            .collect::<Vec<Vec<Letter>>>()
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for pl in 1..=budget {
        for p in words(pl) {
            if crate::words::primitive_root_len(&p) != pl {
                continue;
            }
            for tl in 0..=budget {
                let ts = if tl == 0 { vec![vec![]] } else { words(tl) };
                for t in ts {
                    let r = LeftRay::new(p.clone(), t, 0).expect("nonempty period");
                    if seen.insert(r.clone()) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// Compares `B_n` for `n <= n_budget` and ray membership on small rays.
pub fn equal_spaces(
    a: &Space,
    b: &Space,
    n_budget: usize,
    cutoff: Letter,
) -> Result<Equality, SpaceError> {
    a.check_cutoff(cutoff)?;
    b.check_cutoff(cutoff)?;
    for n in 1..=n_budget {
        let ba: BTreeSet<Vec<Cell>> = a.blocks(n, cutoff)?.into_iter().collect();
        let bb: BTreeSet<Vec<Cell>> = b.blocks(n, cutoff)?.into_iter().collect();
        let first = |x: &BTreeSet<Vec<Cell>>, y: &BTreeSet<Vec<Cell>>| {
            x.difference(y).min_by_key(|w| cell_key(w)).cloned()
        };
        if let Some(w) = first(&ba, &bb).or_else(|| first(&bb, &ba)) {
            return Ok(Equality::Differ(Witness::Word(w)));
        }
    }
    for r in rays(n_budget, cutoff) {
        if a.ray_in_language(&r) != b.ray_in_language(&r) {
            return Ok(Equality::Differ(Witness::Ray(r)));
        }
    }
    Ok(Equality::EqualUpToBudget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{fmt_pattern, parse_pattern, parse_ray};

    fn words(ws: &[&str]) -> ForbiddenSpec {
        ForbiddenSpec::words(ws.iter().map(|w| parse_pattern(w).unwrap()).collect())
    }

    fn star_two_spec() -> Space {
        Space::new(words(&["*2", "1"]))
    }

    #[test]
    fn minimality_examples() {
        let w = is_minimal(&star_two_spec()).unwrap().unwrap();
        assert_eq!(w.word, vec![2]);
        assert_eq!(w.parent, Parent::Word(parse_pattern("*2").unwrap()));
        assert_eq!(is_minimal(&Space::new(words(&["11"]))).unwrap(), None);
        let w = is_minimal(&Space::new(words(&["11", "1"])))
            .unwrap()
            .unwrap();
        assert_eq!(w.word, vec![1]);
    }

    #[test]
    fn minimalize_examples() {
        let m = minimalize(&star_two_spec()).unwrap();
        let shown: Vec<String> = m.patterns().iter().map(fmt_pattern).collect();
        assert_eq!(shown, ["1", "2"]);
        let m = minimalize(&Space::new(words(&["112", "11"]))).unwrap();
        assert_eq!(m, words(&["11"]));
        let allow = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        assert_eq!(minimalize(&allow), Err(SpaceError::AllowlistUnsupported));
    }

    #[test]
    fn allowlist_space_is_minimal() {
        let allow = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        assert_eq!(is_minimal(&allow).unwrap(), None);
    }

    #[test]
    fn equality_examples() {
        let a = Space::new(words(&["11"]));
        assert_eq!(
            equal_spaces(&a, &Space::new(words(&["11", "112"])), 3, 3).unwrap(),
            Equality::EqualUpToBudget
        );
        let r = equal_spaces(&a, &Space::new(words(&["12"])), 3, 3).unwrap();
        assert_eq!(r, Equality::Differ(Witness::Word(vec![Some(1), Some(2)])));
        let allow = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        let r = equal_spaces(&allow, &Space::new(ForbiddenSpec::default()), 3, 3).unwrap();
        assert_eq!(
            r,
            Equality::Differ(Witness::Ray(parse_ray("(0)^-").unwrap()))
        );
    }
}
