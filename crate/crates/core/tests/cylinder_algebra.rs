//! Cylinder intersections and complements against pointwise membership.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shiftspace::reference::{cylinder, point};
use shiftspace::topology::{cyl_intersect, BasicOpen, Cylinder, IntersectCase};
use shiftspace::BiPoint;
use std::collections::HashMap;

/// A point inside `c` most of the time, else an arbitrary one.
fn point_near<R: Rng>(rng: &mut R, c: &Cylinder) -> BiPoint {
    if rng.gen_bool(0.3) {
        return point(rng, 4);
    }
    let u: Vec<u64> = (0..rng.gen_range(0..3))
        .map(|_| rng.gen_range(0..4))
        .collect();
    if rng.gen_bool(0.3) {
        return BiPoint::Finite(c.base.extend(&u));
    }
    let q = vec![rng.gen_range(0..4)];
    BiPoint::from_ray(&c.base, &u, &q).expect("nonempty period")
}

/// A second cylinder sharing or extending the base of `a` most of the time.
fn partner<R: Rng>(rng: &mut R, a: &Cylinder) -> Cylinder {
    match rng.gen_range(0..3) {
        0 => Cylinder::new(a.base.clone(), [rng.gen_range(0..4)]),
        1 => {
            let ext: Vec<u64> = (0..rng.gen_range(1..3))
                .map(|_| rng.gen_range(0..4))
                .collect();
            Cylinder::new(a.base.extend(&ext), [rng.gen_range(0..4)])
        }
        _ => cylinder(rng, 4),
    }
}

#[test]
fn intersection_membership_is_conjunction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases: HashMap<IntersectCase, usize> = HashMap::new();
    for _ in 0..100 {
        let a = cylinder(&mut rng, 4);
        let b = partner(&mut rng, &a);
        let (case, c) = cyl_intersect(&a, &b);
        *cases.entry(case).or_default() += 1;
        for _ in 0..100 {
            let near = if rng.gen_bool(0.5) { &a } else { &b };
            let y = point_near(&mut rng, near);
            let inside = c.as_ref().is_some_and(|c| c.contains(&y));
            assert_eq!(
                inside,
                a.contains(&y) && b.contains(&y),
                "{a} ∩ {b} at {y:?}"
            );
        }
    }
    for case in [
        IntersectCase::Longer,
        IntersectCase::Same,
        IntersectCase::Disjoint,
    ] {
        assert!(
            cases.get(&case).copied().unwrap_or(0) > 0,
            "{case:?} never hit"
        );
    }
}

#[test]
fn complements_are_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let rays: Vec<_> = (0..rng.gen_range(1..4))
            .map(|_| cylinder(&mut rng, 4).base)
            .collect();
        let more: Vec<_> = (0..rng.gen_range(1..3))
            .map(|_| cylinder(&mut rng, 4).base)
            .collect();
        let u = BasicOpen::co_union(rays.clone()).unwrap();
        let v = BasicOpen::co_union(more).unwrap();
        let meet = u.co_union_meet(&v).unwrap();
        for _ in 0..100 {
            let c = Cylinder::plain(rays[rng.gen_range(0..rays.len())].clone());
            let y = point_near(&mut rng, &c);
            let covered = rays.iter().any(|r| Cylinder::plain(r.clone()).contains(&y));
            assert_eq!(u.contains(&y), !covered);
            assert_eq!(meet.contains(&y), u.contains(&y) && v.contains(&y));
        }
        assert!(u.contains(&BiPoint::Empty));
    }
}
