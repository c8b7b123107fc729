//! Sliding block codes against direct window evaluation, and the algebra of
//! pseudo cylinders and finitely defined sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shiftspace::block_code::{
    pseudo_intersect, Clause, FinitelyDefinedSet, Out, PseudoCylinder, RuleFile, SlidingBlockCode,
    WinCell,
};
use shiftspace::reference::{periodic_point, point};
use shiftspace::text::fmt_point;
use shiftspace::topology::{escapes_cylinders, Cylinder};
use shiftspace::{BiPoint, LeftRay};

/// A valid code with memory plus anticipation at most `span`.
fn random_code<R: Rng>(rng: &mut R, span: usize) -> SlidingBlockCode {
    loop {
        let k = rng.gen_range(0..=span);
        let l = rng.gen_range(0..=span - k);
        let out = |rng: &mut R| match rng.gen_range(0..3) {
            0 => Out::Letter(rng.gen_range(0..4)),
            _ => Out::Map {
                chain: vec![],
                at: rng.gen_range(-(k as i64)..=l as i64),
            },
        };
        let clauses: Vec<Clause> = (0..rng.gen_range(0..4))
            .map(|_| Clause {
                window: (0..k + l + 1)
                    .map(|_| match rng.gen_range(0..4) {
                        0 => WinCell::Any,
                        1 => WinCell::Wild,
                        _ => WinCell::Is(rng.gen_range(0..4)),
                    })
                    .collect(),
                out: out(rng),
            })
            .collect();
        let default = out(rng);
        if let Ok(c) = SlidingBlockCode::build(k, l, &clauses, default) {
            return c;
        }
    }
}

#[test]
fn apply_matches_window_evaluation_and_commutes_with_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let f = random_code(&mut rng, 3);
        let (k, l) = (f.memory() as i64, f.anticipation() as i64);
        for _ in 0..40 {
            let x = point(&mut rng, 5);
            let y = f.apply(&x).unwrap();
            for n in -30..=30 {
                assert_eq!(
                    y.index(n),
                    f.eval(&x.cells(n - k, n + l)),
                    "x={} n={n}",
                    fmt_point(&x)
                );
            }
            let s = rng.gen_range(-5..=5);
            assert_eq!(f.apply(&x.shift(s)).unwrap(), y.shift(s));
        }
    }
}

#[test]
fn periods_survive_and_empty_goes_to_a_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..60 {
        let f = random_code(&mut rng, 3);
        for p in 1..=6 {
            let x = periodic_point(&mut rng, p, 4);
            assert!(f.apply(&x).unwrap().has_period(p as i64));
        }
        let e = f.apply(&BiPoint::Empty).unwrap();
        assert!(
            e == BiPoint::Empty || e.has_period(1),
            "Φ(Ø) = {}",
            fmt_point(&e)
        );
    }
}

#[test]
fn shift_rule_file_is_the_shift() {
    let r: RuleFile =
        serde_json::from_str(r#"{"memory":0,"anticipation":1,"rules":[],"default":"@1"}"#).unwrap();
    let f = SlidingBlockCode::from_rule_file(&r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..100 {
        let x = point(&mut rng, 5);
        assert_eq!(f.apply(&x).unwrap(), x.shift(1));
    }
}

#[test]
fn composition_applies_in_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let halving = SlidingBlockCode::halving();
    for _ in 0..40 {
        // Composite tables grow with the summed window, so keep both small.
        let f = random_code(&mut rng, 1);
        let g = random_code(&mut rng, 2);
        let fg = f.compose(&g);
        let fh = f.compose(&halving);
        for _ in 0..20 {
            let x = point(&mut rng, 9);
            assert_eq!(
                fg.apply(&x).unwrap(),
                f.apply(&g.apply(&x).unwrap()).unwrap()
            );
            assert_eq!(
                fh.apply(&x).unwrap(),
                f.apply(&halving.apply(&x).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn halving_is_discontinuous_at_empty() {
    let halving = SlidingBlockCode::halving();
    let family: Vec<BiPoint> = (1..=20)
        .map(|i| BiPoint::infinite(vec![1], vec![2], vec![1], -i).unwrap())
        .collect();
    let probe: Vec<Cylinder> = (1..=10)
        .map(|j| Cylinder::plain(LeftRay::constant(1, -j)))
        .collect();
    assert!(escapes_cylinders(&family, &probe).escapes);
    let images: Vec<BiPoint> = family.iter().map(|x| halving.apply(x).unwrap()).collect();
    assert!(images.iter().all(|y| *y == BiPoint::constant(1)));
    assert_eq!(halving.apply(&BiPoint::Empty).unwrap(), BiPoint::Empty);
    assert!(!halving.check_continuity().passes);
}

fn random_pseudo<R: Rng>(rng: &mut R) -> PseudoCylinder {
    let n = rng.gen_range(1..=3);
    let mut cells: Vec<Option<u64>> = (0..n).map(|_| Some(rng.gen_range(0..3))).collect();
    if rng.gen_bool(0.2) {
        *cells.last_mut().unwrap() = None;
    }
    PseudoCylinder::new(cells, rng.gen_range(-2..=2))
}

#[test]
fn pseudo_cylinder_and_finitely_defined_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..100 {
        let (a, b) = (random_pseudo(&mut rng), random_pseudo(&mut rng));
        let meet = pseudo_intersect(&a, &b);
        let (fa, fb) = (
            FinitelyDefinedSet::from_pseudo(&a),
            FinitelyDefinedSet::from_pseudo(&b),
        );
        let union = FinitelyDefinedSet::union(&[fa.clone(), fb.clone()]);
        let inter = FinitelyDefinedSet::intersection(&[fa.clone(), fb.clone()]);
        let comp = fa.complement();
        for _ in 0..50 {
            let x = point(&mut rng, 4);
            let (ia, ib) = (a.contains(&x), b.contains(&x));
            assert_eq!(
                meet.iter().any(|c| c.contains(&x)),
                ia && ib,
                "{a} ∩ {b} at {}",
                fmt_point(&x)
            );
            assert_eq!(fa.contains(&x), ia);
            assert_eq!(union.contains(&x), ia || ib);
            assert_eq!(inter.contains(&x), ia && ib);
            assert_eq!(comp.contains(&x), !ia);
        }
    }
}
