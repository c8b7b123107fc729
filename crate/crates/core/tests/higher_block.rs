//! Higher block recoding as a conjugacy, recoded spaces and edge shifts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shiftspace::higher_block::{edge_space, hb_decode, hb_encode, to_edge_shift, HigherBlockSpace};
use shiftspace::reference::{infinite_point, pattern, point};
use shiftspace::space::{ForbiddenSpec, Space};
use shiftspace::text::{fmt_point, parse_pattern};
use shiftspace::{BiPoint, Pattern};

#[test]
fn encode_is_a_shift_commuting_bijection() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in 2..=4 {
        for _ in 0..200 {
            let x = point(&mut rng, 5);
            let y = hb_encode(m, &x).unwrap();
            assert_eq!(hb_decode(m, &y).unwrap(), x, "M={m}, x={}", fmt_point(&x));
            let n = rng.gen_range(-6..=6);
            assert_eq!(hb_encode(m, &x.shift(n)).unwrap(), y.shift(n));
            assert_eq!(y.length(), x.length());
        }
    }
}

#[test]
fn recoded_membership_matches_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..30 {
        let words: Vec<Pattern> = (0..rng.gen_range(1..=3))
            .map(|_| pattern(&mut rng, 3, 4, true))
            .collect();
        let base = Space::new(ForbiddenSpec::words(words));
        for m in 1..=3 {
            let h = HigherBlockSpace::new(m, base.clone()).unwrap();
            for _ in 0..50 {
                let x = point(&mut rng, 4);
                assert_eq!(h.contains(&hb_encode(m, &x).unwrap()), base.contains(&x));
            }
        }
    }
}

#[test]
fn short_patterns_pad_to_the_same_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let p = pattern(&mut rng, 2, 4, true);
        let m = 3;
        let short = Space::new(ForbiddenSpec::words(vec![p.clone()]));
        let padded = Space::new(ForbiddenSpec::words(vec![p.padded_left(m)]));
        for _ in 0..50 {
            let x = point(&mut rng, 4);
            assert_eq!(short.contains(&x), padded.contains(&x));
        }
    }
}

/// One forbidden word `0101…` of length `k + 1`.
fn k_step_spec(k: usize) -> ForbiddenSpec {
    let w: String = (0..=k).map(|i| char::from(b'0' + (i % 2) as u8)).collect();
    ForbiddenSpec::words(vec![parse_pattern(&w).unwrap()])
}

#[test]
fn recoding_lowers_the_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for k in 0..=4 {
        let base = Space::new(k_step_spec(k));
        for m in 1..=k + 1 {
            let h = HigherBlockSpace::new(m, base.clone()).unwrap();
            let l = (k + 1).saturating_sub(m).max(1);
            assert_eq!(h.classify().m_step, Some(l), "K={k}, M={m}");
            // An infinite point of the image lies in the space iff all its
            // (L+1)-windows are words of the recoded language.
            for _ in 0..40 {
                let y = hb_encode(m, &infinite_point(&mut rng, 3)).unwrap();
                let windows_ok = (-20..20).all(|i| h.in_language(&y.cells(i, i + l as i64)));
                assert_eq!(
                    h.contains(&y),
                    windows_ok,
                    "K={k}, M={m}, y={}",
                    fmt_point(&y)
                );
            }
        }
    }
}

#[test]
fn golden_mean_edge_shift() {
    let base = Space::new(ForbiddenSpec::words(vec![parse_pattern("11").unwrap()]));
    let g = to_edge_shift(&base, 1, 2).unwrap();
    assert_eq!(g.vertices, [vec![0], vec![1]]);
    assert_eq!(g.edges, [vec![0, 0], vec![0, 1], vec![1, 0]]);
    let es = edge_space(&g);
    let recoded = HigherBlockSpace::new(2, base.clone()).unwrap();
    for n in 1..=5 {
        assert_eq!(es.blocks(n), recoded.blocks(n, 2).unwrap(), "n={n}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..200 {
        let x = point(&mut rng, 3);
        assert_eq!(
            es.contains(&g.encode_point(&x).unwrap()),
            base.contains(&x),
            "x={}",
            fmt_point(&x)
        );
    }
    assert!(es.contains(&BiPoint::Empty));
}
