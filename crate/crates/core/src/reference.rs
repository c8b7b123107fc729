//! Seeded samplers and brute-force reference deciders for cross-checking
//! the exact procedures.

use crate::point::BiPoint;
use crate::space::ForbiddenSpec;
use crate::topology::Cylinder;
use crate::words::{LeftRay, Letter, PatCell, Pattern};
use rand::seq::SliceRandom;
use rand::Rng;
use std::ops::RangeInclusive;

fn word<R: Rng>(rng: &mut R, len: RangeInclusive<usize>, letters: Letter) -> Vec<Letter> {
    let n = rng.gen_range(len);
    (0..n).map(|_| rng.gen_range(0..letters)).collect()
}

/// An infinite point with periods of length 1 to 3, a body of length at
/// most 4 and letters below `letters`.
pub fn infinite_point<R: Rng>(rng: &mut R, letters: Letter) -> BiPoint {
    let left = word(rng, 1..=3, letters);
    let body = word(rng, 0..=4, letters);
    let right = word(rng, 1..=3, letters);
    BiPoint::infinite(left, body, right, rng.gen_range(-5..=5)).expect("nonempty periods")
}

pub fn ray<R: Rng>(rng: &mut R, letters: Letter) -> LeftRay {
    let p = word(rng, 1..=2, letters);
    let t = word(rng, 0..=3, letters);
    LeftRay::new(p, t, rng.gen_range(-4..=4)).expect("nonempty period")
}

/// Infinite points, finite points and Ø in a ratio of 6:3:1.
pub fn point<R: Rng>(rng: &mut R, letters: Letter) -> BiPoint {
    match rng.gen_range(0..10) {
        0 => BiPoint::Empty,
        1..=3 => BiPoint::Finite(ray(rng, letters)),
        _ => infinite_point(rng, letters),
    }
}

/// A point of period `p`: `σ^p x = x`.
pub fn periodic_point<R: Rng>(rng: &mut R, p: usize, letters: Letter) -> BiPoint {
    let w = word(rng, p..=p, letters);
    BiPoint::infinite(w.clone(), vec![], w, rng.gen_range(-3..=3)).expect("nonempty period")
}

pub fn pattern<R: Rng>(rng: &mut R, max_len: usize, letters: Letter, wild: bool) -> Pattern {
    let len = rng.gen_range(1..=max_len);
    let cells = (0..len)
        .map(|_| {
            if wild && rng.gen_bool(0.15) {
                PatCell::Any
            } else {
                PatCell::Is(rng.gen_range(0..letters))
            }
        })
        .collect();
    Pattern::new(cells).expect("nonempty")
}

/// Up to three words of length at most `max_len`, sometimes with a
/// forbidden tail or an allowlist.
pub fn spec<R: Rng>(rng: &mut R, max_len: usize, letters: Letter) -> ForbiddenSpec {
    let words = (0..rng.gen_range(1..=3))
        .map(|_| pattern(rng, max_len, letters, true))
        .collect();
    let tails = if rng.gen_bool(0.3) {
        vec![ray(rng, letters).with_end(0)]
    } else {
        vec![]
    };
    let allow = rng.gen_bool(0.2).then(|| vec![word(rng, 1..=2, letters)]);
    ForbiddenSpec::new(words, tails, allow)
}

pub fn cylinder<R: Rng>(rng: &mut R, letters: Letter) -> Cylinder {
    let n = rng.gen_range(0..=2);
    let mut excluded: Vec<Letter> = (0..letters).collect();
    excluded.shuffle(rng);
    Cylinder::new(ray(rng, letters), excluded.into_iter().take(n))
}

/// Decides membership of an infinite point by scanning the cells within
/// `radius` of 0 for pattern occurrences, every tail ray ending in that
/// range against the forbidden tails over `radius` letters, and the far
/// left against the allowlist.
pub fn naive_contains(spec: &ForbiddenSpec, x: &BiPoint, radius: i64) -> bool {
    assert!(
        matches!(x, BiPoint::Infinite(_)),
        "the scanner reads infinite points"
    );
    let at = |i: i64| x.index(i).expect("infinite points have letters everywhere");
    for p in spec.patterns() {
        let n = p.len() as i64;
        for i in -radius..=radius - n + 1 {
            let w: Vec<Letter> = (i..i + n).map(at).collect();
            if p.matches(&w) {
                return false;
            }
        }
    }
    for f in spec.tails() {
        for k in -radius..=radius {
            if (0..2 * radius).all(|j| at(k - j) == f.at(-j)) {
                return false;
            }
        }
    }
    if let Some(allowed) = spec.allow_tails() {
        let far: Vec<Letter> = (-3 * radius..-2 * radius).map(at).collect();
        let ok = allowed.iter().any(|per| {
            let n = per.len();
            (0..n).any(|s| far.iter().enumerate().all(|(i, &a)| a == per[(i + s) % n]))
        });
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_pattern, parse_point};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scanner_basics() {
        let golden = ForbiddenSpec::words(vec![parse_pattern("11").unwrap()]);
        assert!(naive_contains(
            &golden,
            &parse_point("(01)^- . (0)^+").unwrap(),
            60
        ));
        assert!(!naive_contains(
            &golden,
            &parse_point("(01)^- . 1 (0)^+").unwrap(),
            60
        ));
        let allow = ForbiddenSpec::new(vec![], vec![], Some(vec![vec![0, 1]]));
        assert!(naive_contains(
            &allow,
            &parse_point("(10)^- . (2)^+").unwrap(),
            60
        ));
        assert!(!naive_contains(
            &allow,
            &parse_point("(0)^- . (2)^+").unwrap(),
            60
        ));
    }

    #[test]
    fn samplers_are_deterministic() {
        let a: Vec<BiPoint> = (0..5)
            .map(|_| point(&mut ChaCha8Rng::seed_from_u64(7), 5))
            .collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }
}
