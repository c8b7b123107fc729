//! Membership of infinite points against a brute-force window and tail scanner.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shiftspace::reference::{infinite_point, naive_contains, spec};
use shiftspace::space::Space;
use shiftspace::text::{fmt_pattern, fmt_point};

#[test]
fn contains_matches_scanner_on_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let f = spec(&mut rng, 4, 5);
        let space = Space::new(f.clone());
        for _ in 0..500 {
            let x = infinite_point(&mut rng, 5);
            assert_eq!(
                space.contains(&x),
                naive_contains(&f, &x, 60),
                "point {} against words {:?}, tails {:?}, allow {:?}",
                fmt_point(&x),
                f.patterns().iter().map(fmt_pattern).collect::<Vec<_>>(),
                f.tails(),
                f.allow_tails()
            );
        }
    }
}

#[test]
fn accepted_points_exist_for_most_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut hits = 0;
    for _ in 0..40 {
        let space = Space::new(spec(&mut rng, 4, 5));
        if (0..200).any(|_| space.contains(&infinite_point(&mut rng, 5))) {
            hits += 1;
        }
    }
    assert!(hits >= 20, "only {hits} specs accepted a sample");
}

#[test]
fn contains_matches_scanner_near_tails_and_allowlists() {
    use rand::Rng;
    use shiftspace::BiPoint;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 40 {
        let f = spec(&mut rng, 3, 4);
        if f.tails().is_empty() && f.allow_tails().is_none() {
            continue;
        }
        checked += 1;
        let space = Space::new(f.clone());
        for _ in 0..300 {
            let y = infinite_point(&mut rng, 4);
            let BiPoint::Infinite(t) = &y else {
                unreachable!()
            };
            let left = match (f.tails().first(), f.allow_tails()) {
                (Some(r), _) if rng.gen_bool(0.5) => r.with_end(rng.gen_range(-3..=3)),
                (_, Some(a)) => {
                    shiftspace::LeftRay::new(a[0].clone(), t.body().to_vec(), rng.gen_range(-3..=3))
                        .unwrap()
                }
                _ => y.tail_ray(0).unwrap(),
            };
            let x = BiPoint::from_ray(&left, t.body(), t.right()).unwrap();
            assert_eq!(
                space.contains(&x),
                naive_contains(&f, &x, 60),
                "point {}",
                fmt_point(&x)
            );
        }
    }
}
