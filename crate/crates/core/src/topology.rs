//! Generalized cylinders and the clopen basis built from them.

use crate::point::{BiPoint, Length};
use crate::text::{fmt_ray, parse_ray, TextError};
use crate::words::{LeftRay, Letter};
use std::collections::BTreeSet;
use std::fmt;

/// `Z(x, F)`: points agreeing with the ray `x` up to its end whose next
/// entry lies outside `F`. The next entry may be ø.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    pub base: LeftRay,
    pub excluded: BTreeSet<Letter>,
}

impl Cylinder {
    pub fn new(base: LeftRay, excluded: impl IntoIterator<Item = Letter>) -> Self {
        Cylinder {
            base,
            excluded: excluded.into_iter().collect(),
        }
    }

    /// `Z(x)` with no excluded letters.
    pub fn plain(base: LeftRay) -> Self {
        Cylinder {
            base,
            excluded: BTreeSet::new(),
        }
    }

    /// The cylinder around a finite nonempty point.
    pub fn around(x: &BiPoint, excluded: impl IntoIterator<Item = Letter>) -> Option<Self> {
        match x {
            BiPoint::Finite(r) => Some(Cylinder::new(r.clone(), excluded)),
            _ => None,
        }
    }

    pub fn contains(&self, y: &BiPoint) -> bool {
        let k = self.base.end();
        if y.length() < Length::Finite(k) {
            return false;
        }
        match y.tail_ray(k) {
            Ok(r) if r == self.base => y.index(k + 1).is_none_or(|a| !self.excluded.contains(&a)),
            _ => false,
        }
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ex: Vec<String> = self.excluded.iter().map(|a| a.to_string()).collect();
        write!(f, "Z( {} ; {{{}}} )", fmt_ray(&self.base), ex.join(","))
    }
}

/// Which branch of the two-cylinder intersection rule applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntersectCase {
    /// Bases of different lengths; the longer cylinder survives.
    Longer,
    /// Equal bases; excluded sets merge.
    Same,
    Disjoint,
}

/// `Z(x,F) ∩ Z(y,G)` as a single cylinder or nothing.
pub fn cyl_intersect(a: &Cylinder, b: &Cylinder) -> (IntersectCase, Option<Cylinder>) {
    let (short, long) = if a.base.end() <= b.base.end() {
        (a, b)
    } else {
        (b, a)
    };
    let k = short.base.end();
    if k < long.base.end() {
        let agrees = long.base.truncate(k) == short.base;
        let next = long.base.at(k + 1);
        if agrees && !short.excluded.contains(&next) {
            return (IntersectCase::Longer, Some(long.clone()));
        }
        return (IntersectCase::Disjoint, None);
    }
    if short.base == long.base {
        let excluded = short.excluded.union(&long.excluded).copied().collect();
        return (
            IntersectCase::Same,
            Some(Cylinder {
                base: short.base.clone(),
                excluded,
            }),
        );
    }
    (IntersectCase::Disjoint, None)
}

/// A member of the clopen basis: a cylinder, or the complement of a finite
/// union of plain cylinders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasicOpen {
    Cyl(Cylinder),
    CoUnion(Vec<LeftRay>),
}

impl BasicOpen {
    /// Sorts and deduplicates the rays; `None` for an empty list.
    pub fn co_union(rays: impl IntoIterator<Item = LeftRay>) -> Option<Self> {
        let set: BTreeSet<LeftRay> = rays.into_iter().collect();
        (!set.is_empty()).then(|| BasicOpen::CoUnion(set.into_iter().collect()))
    }

    pub fn contains(&self, y: &BiPoint) -> bool {
        match self {
            BasicOpen::Cyl(c) => c.contains(y),
            BasicOpen::CoUnion(rays) => {
                !rays.iter().any(|r| Cylinder::plain(r.clone()).contains(y))
            }
        }
    }

    /// The intersection of two complements is the complement of the union.
    pub fn co_union_meet(&self, other: &BasicOpen) -> Option<BasicOpen> {
        match (self, other) {
            (BasicOpen::CoUnion(a), BasicOpen::CoUnion(b)) => {
                BasicOpen::co_union(a.iter().chain(b).cloned())
            }
            _ => None,
        }
    }
}

impl fmt::Display for BasicOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicOpen::Cyl(c) => write!(f, "{c}"),
            BasicOpen::CoUnion(rays) => {
                let parts: Vec<String> = rays
                    .iter()
                    .map(|r| Cylinder::plain(r.clone()).to_string())
                    .collect();
                write!(f, "!{{ {} }}", parts.join(", "))
            }
        }
    }
}

/// Parses `Z( (p)^- t @k ; {f1,f2} )`; the excluded part is optional.
pub fn parse_cylinder(s: &str) -> Result<Cylinder, TextError> {
    let bad = |msg: &str| TextError::Syntax {
        pos: 0,
        msg: msg.to_string(),
    };
    let inner = s
        .trim()
        .strip_prefix("Z(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad("expected `Z( ray ; {..} )`"))?;
    let (ray, ex) = inner.split_once(';').unwrap_or((inner, "{}"));
    let ex = ex
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| bad("expected `{..}`"))?;
    let excluded = ex
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Letter>().map_err(|_| bad("bad excluded letter")))
        .collect::<Result<BTreeSet<_>, _>>()?;
    Ok(Cylinder {
        base: parse_ray(ray)?,
        excluded,
    })
}

/// The first `budget` members of a neighborhood basis at `x`.
///
/// Infinite points get the cylinders of their tails at 0, -1, -2, …;
/// finite points get `Z(x, {0 … j-1})`; Ø gets complements of the first
/// `j` context rays, defaulting to the constant rays `(j)^- @0`.
pub fn nbhd_basis(x: &BiPoint, budget: usize, context: &[LeftRay]) -> Vec<BasicOpen> {
    match x {
        BiPoint::Infinite(_) => (0..budget as i64)
            .map(|n| {
                BasicOpen::Cyl(Cylinder::plain(
                    x.tail_ray(-n).expect("infinite points have every tail"),
                ))
            })
            .collect(),
        BiPoint::Finite(r) => (1..=budget as Letter)
            .map(|j| BasicOpen::Cyl(Cylinder::new(r.clone(), 0..j)))
            .collect(),
        BiPoint::Empty => {
            let rays: Vec<LeftRay> = if context.is_empty() {
                (0..budget as Letter)
                    .map(|a| LeftRay::constant(a, 0))
                    .collect()
            } else {
                context.to_vec()
            };
            (1..=budget.min(rays.len()))
                .filter_map(|j| BasicOpen::co_union(rays[..j].iter().cloned()))
                .collect()
        }
    }
}

/// Per cylinder, the index of the last family member it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeReport {
    pub last_hit: Vec<Option<usize>>,
    /// Every cylinder misses the final member, so each holds only a proper prefix.
    pub escapes: bool,
}

pub fn escapes_cylinders(family: &[BiPoint], cyls: &[Cylinder]) -> EscapeReport {
    let last_hit: Vec<Option<usize>> = cyls
        .iter()
        .map(|c| family.iter().rposition(|y| c.contains(y)))
        .collect();
    let escapes = !family.is_empty()
        && last_hit
            .iter()
            .all(|h| h.is_none_or(|i| i + 1 < family.len()));
    EscapeReport { last_hit, escapes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_point;

    fn ray(s: &str) -> LeftRay {
        parse_ray(s).unwrap()
    }

    fn pt(s: &str) -> BiPoint {
        parse_point(s).unwrap()
    }

    #[test]
    fn membership_examples() {
        let y = pt("(0)^- 1 . (2)^+");
        assert!(Cylinder::new(ray("(0)^- 1 @0"), []).contains(&y));
        assert!(!Cylinder::new(ray("(0)^- 1 @0"), [2]).contains(&y));
        assert!(!Cylinder::new(ray("(0)^- 1 @0"), []).contains(&BiPoint::Empty));
        assert!(Cylinder::new(ray("(0)^- 1 @0"), [2]).contains(&pt("(0)^- 1 . #")));
    }

    #[test]
    fn intersection_cases() {
        let x = ray("(0)^- 1 @0");
        let y = ray("(0)^- 1 2 @1");
        let r = cyl_intersect(
            &Cylinder::new(x.clone(), [3]),
            &Cylinder::new(y.clone(), [5]),
        );
        assert_eq!(
            r,
            (IntersectCase::Longer, Some(Cylinder::new(y.clone(), [5])))
        );
        let r = cyl_intersect(
            &Cylinder::new(x.clone(), [1]),
            &Cylinder::new(x.clone(), [2]),
        );
        assert_eq!(
            r,
            (IntersectCase::Same, Some(Cylinder::new(x.clone(), [1, 2])))
        );
        let r = cyl_intersect(&Cylinder::new(x, [2]), &Cylinder::new(y, []));
        assert_eq!(r, (IntersectCase::Disjoint, None));
    }

    #[test]
    fn co_union_examples() {
        let u = BasicOpen::co_union([ray("(0)^- 1 @0")]).unwrap();
        assert!(u.contains(&BiPoint::Empty));
        assert!(!u.contains(&pt("(0)^- 1 . (2)^+")));
        let v = BasicOpen::co_union([ray("(0)^- @0"), ray("(1)^- @0")]).unwrap();
        assert!(v.contains(&pt("(01)^- . (01)^+")));
    }

    #[test]
    fn basis_examples() {
        let b = nbhd_basis(&pt("(0)^- . (1)^+"), 2, &[]);
        assert_eq!(b[0].to_string(), "Z( (0)^- @0 ; {} )");
        assert_eq!(b[1].to_string(), "Z( (0)^- @-1 ; {} )");
        let b = nbhd_basis(&pt("(0)^- 1 . #"), 2, &[]);
        assert_eq!(b[1].to_string(), "Z( (0)^- 1 @0 ; {0,1} )");
        let b = nbhd_basis(&BiPoint::Empty, 1, &[]);
        assert_eq!(b.len(), 1);
        assert!(b[0].contains(&BiPoint::Empty));
    }

    #[test]
    fn escape_examples() {
        let family: Vec<BiPoint> = (1..=20)
            .map(|j| BiPoint::infinite(vec![1], vec![2], vec![1], -j).unwrap())
            .collect();
        let rep = escapes_cylinders(&family, &[Cylinder::plain(ray("(1)^- @-5"))]);
        assert_eq!(rep.last_hit, vec![Some(3)]);
        assert!(rep.escapes);
        let c = BiPoint::constant(0);
        assert!(!escapes_cylinders(&[c.clone(), c], &[Cylinder::plain(ray("(0)^- @0"))]).escapes);
    }

    #[test]
    fn cylinder_text_round_trip() {
        let c = parse_cylinder("Z( (0)^- 1 @0 ; {2,3} )").unwrap();
        assert_eq!(parse_cylinder(&c.to_string()).unwrap(), c);
    }
}
