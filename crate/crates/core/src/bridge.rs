//! Projection to one-sided spaces, the inverse limit back to two-sided
//! spaces, and the homeomorphism between a cylinder and the one-sided full
//! shift.
//!
//! One-sided spaces are given by finite patterns only: infinite sequences
//! avoiding them, finite sequences with infinitely many one-letter
//! extensions, and Ø when infinitely many letters occur.

use crate::point::{BiPoint, OnePoint, PointError};
use crate::space::engine::{Engine, State};
use crate::space::{
    equal_spaces, is_minimal, Equality, ForbiddenSpec, MinimalityWitness, Space, SpaceError,
    Witness,
};
use crate::topology::Cylinder;
use crate::words::{LeftRay, Letter, Pattern, FRESH};
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("the forbidden set is not minimal: {0:?} is missing from the language")]
    NotMinimal(Vec<Letter>),
    #[error("the base point must be a finite point other than Ø")]
    BadBase,
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Point(#[from] PointError),
}

impl From<MinimalityWitness> for BridgeError {
    fn from(w: MinimalityWitness) -> Self {
        BridgeError::NotMinimal(w.word)
    }
}

/// `π(x) = (x_i)_{i >= 1}` together with whether `π` is continuous at `x`,
/// which holds exactly when `l(x) >= 0`.
pub fn project(x: &BiPoint) -> (OnePoint, bool) {
    match x {
        BiPoint::Empty => (OnePoint::Empty, false),
        BiPoint::Finite(r) => {
            let w: Vec<Letter> = (1..=r.end()).map(|i| r.at(i)).collect();
            (OnePoint::finite(w), r.end() >= 0)
        }
        BiPoint::Infinite(t) => {
            let e = (t.start() + t.body().len() as i64 - 1).max(0);
            let q = t.right().len() as i64;
            let letters = |lo: i64, hi: i64| -> Vec<Letter> {
                (lo..=hi).map(|i| x.index(i).expect("letter")).collect()
            };
            let z =
                OnePoint::infinite(letters(1, e), letters(e + 1, e + q)).expect("nonempty period");
            (z, true)
        }
    }
}

/// The family `X_i = (x_{i+j-1})_{j >= 1}` of a two-sided point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    x: BiPoint,
}

pub fn p_inverse(x: &BiPoint) -> Orbit {
    Orbit { x: x.clone() }
}

impl Orbit {
    /// `X_i`; consecutive members satisfy `σ(X_i) = X_{i+1}`.
    pub fn component(&self, i: i64) -> OnePoint {
        project(&self.x.shift(i - 1)).0
    }

    /// `p((X_i)_i)`: the first letter of every member.
    pub fn p(&self) -> Result<BiPoint, PointError> {
        let (left, body, right, start) = self.x.regions();
        let first = |i: i64| self.component(i).index(1);
        let (p, b, q) = (left.len() as i64, body.len() as i64, right.len() as i64);
        let cells = |lo: i64, n: i64| (lo..lo + n).map(first).collect::<Vec<_>>();
        BiPoint::from_cells(
            &cells(start - p, p),
            &cells(start, b),
            &cells(start + b, q),
            start,
        )
    }
}

/// `f_x(z)`: the base up to `l(x)`, then `z`.
pub fn embed_in_cylinder(base: &BiPoint, z: &OnePoint) -> Result<BiPoint, BridgeError> {
    let BiPoint::Finite(r) = base else {
        return Err(BridgeError::BadBase);
    };
    Ok(match z {
        OnePoint::Empty => base.clone(),
        OnePoint::Finite(w) => BiPoint::Finite(r.extend(w)),
        OnePoint::Infinite { transient, period } => BiPoint::from_ray(r, transient, period)?,
    })
}

/// `f_x^{-1}(y)` for `y` in `Z(x)`.
pub fn cylinder_coordinate(base: &BiPoint, y: &BiPoint) -> Result<Option<OnePoint>, BridgeError> {
    let BiPoint::Finite(r) = base else {
        return Err(BridgeError::BadBase);
    };
    if !Cylinder::plain(r.clone()).contains(y) {
        return Ok(None);
    }
    Ok(Some(project(&y.shift(r.end())).0))
}

/// A one-sided space given by finite patterns.
#[derive(Debug, Clone)]
pub struct OneSpace {
    patterns: Vec<Pattern>,
    engine: Engine,
    reach: Vec<State>,
    alive: HashSet<State>,
}

impl OneSpace {
    pub fn new(patterns: Vec<Pattern>) -> Self {
        let engine = Engine::new(patterns.clone(), vec![], None);
        let (reach, alive) = engine.explore(&[Self::start()]);
        OneSpace {
            patterns: engine.patterns.clone(),
            engine,
            reach,
            alive,
        }
    }

    fn start() -> State {
        State {
            hist: vec![],
            track: None,
        }
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    fn run(&self, from: &State, w: &[Letter]) -> Option<State> {
        w.iter().try_fold(from.clone(), |s, &a| {
            self.engine.step(&s, self.engine.abstract_letter(a))
        })
    }

    fn extends(&self, s: &State) -> bool {
        self.engine
            .step(s, FRESH)
            .is_some_and(|t| self.alive.contains(&t))
    }

    /// `|L| = ∞`: some infinite sequence passes an unmentioned letter.
    pub fn letters_infinite(&self) -> bool {
        self.reach
            .iter()
            .filter(|s| self.alive.contains(*s))
            .any(|s| self.extends(s))
    }

    /// `|X| < ∞`: finitely many letters and no branching on a cycle.
    pub fn is_finite(&self) -> bool {
        if self.letters_infinite() {
            return false;
        }
        let live: Vec<&State> = self
            .reach
            .iter()
            .filter(|s| self.alive.contains(*s))
            .collect();
        let index: HashMap<&State, usize> = live.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let succ: Vec<Vec<usize>> = live
            .iter()
            .map(|s| {
                self.engine
                    .alphabet
                    .iter()
                    .filter_map(|&a| self.engine.step(s, a))
                    .filter_map(|t| index.get(&t).copied())
                    .collect()
            })
            .collect();
        let comp = crate::space::engine::tarjan(&succ);
        let cyclic = |i: usize| succ[i].iter().any(|&j| comp[j] == comp[i]);
        !(0..live.len()).any(|i| cyclic(i) && succ[i].len() >= 2)
    }

    pub fn contains(&self, z: &OnePoint) -> bool {
        match z {
            OnePoint::Empty => self.letters_infinite(),
            OnePoint::Finite(w) => self
                .run(&Self::start(), w)
                .is_some_and(|s| self.alive.contains(&s) && self.extends(&s)),
            OnePoint::Infinite { transient, period } => {
                let Some(mut s) = self.run(&Self::start(), transient) else {
                    return false;
                };
                let mut seen = HashSet::new();
                while seen.insert(s.clone()) {
                    match self.run(&s, period) {
                        Some(t) => s = t,
                        None => return false,
                    }
                }
                true
            }
        }
    }

    /// Whether `w` occurs in some infinite sequence of the space.
    pub fn in_language(&self, w: &[Letter]) -> bool {
        self.reach
            .iter()
            .any(|s| self.run(s, w).is_some_and(|t| self.alive.contains(&t)))
    }
}

/// Whether some point of the two-sided automaton projects onto `z`;
/// `finite_ok` says whether finite points and Ø are available.
fn projects_onto(e: &Engine, z: &OnePoint, finite_ok: bool) -> bool {
    match z {
        OnePoint::Empty => finite_ok,
        OnePoint::Finite(w) => {
            finite_ok
                && !e
                    .run(&e.all_trim(), &[w.clone(), vec![FRESH]].concat())
                    .is_empty()
        }
        OnePoint::Infinite { transient, period } => {
            let mut cur = e.run(&e.all_trim(), transient);
            let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
            while !cur.is_empty() && seen.insert(cur.clone()) {
                cur = e.run(&cur, period);
            }
            !cur.is_empty()
        }
    }
}

/// Whether `z` lies in `π(Λ)`.
pub fn projection_contains(space: &Space, z: &OnePoint) -> bool {
    projects_onto(space.engine(), z, space.inf_infinite())
}

/// How the closure of `π(Λ)` relates to the one-sided space of `F'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionCase {
    /// `|L_Λ| = ∞`: `π(Λ)` is dense in the one-sided space.
    Dense,
    /// `|L_Λ| < ∞`: `π(Λ \ {Ø})` is the standard shift over `L_Λ`.
    Standard,
}

#[derive(Debug, Clone)]
pub struct Projected {
    pub one: OneSpace,
    pub case: ProjectionCase,
}

/// The one-sided space of the finite part `F'` of a minimal specification.
pub fn project_space(space: &Space) -> Result<Projected, BridgeError> {
    if let Some(w) = is_minimal(space)? {
        return Err(w.into());
    }
    let case = if space.letters_infinite() {
        ProjectionCase::Dense
    } else {
        ProjectionCase::Standard
    };
    Ok(Projected {
        one: OneSpace::new(space.spec().patterns().to_vec()),
        case,
    })
}

/// How `p((X̂_F)^σ)` relates to the two-sided `X_F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftCase {
    /// `Λ = X_F`.
    Equal,
    /// `Λ ∪ {Ø} = X_F` with `Ø` outside `Λ`.
    EmptyAdjoined,
}

/// `Λ = p((X̂_F)^σ)`: two-sided points all of whose one-sided tails
/// `(x_{i+j-1})_j` lie in the one-sided space.
#[derive(Debug, Clone)]
pub struct InverseLimit {
    one: OneSpace,
    two: Space,
}

impl InverseLimit {
    pub fn new(one: &OneSpace) -> Self {
        let two = Space::new(ForbiddenSpec::words(one.patterns().to_vec()));
        InverseLimit {
            one: one.clone(),
            two,
        }
    }

    /// The two-sided space `X_F` with the same patterns.
    pub fn space(&self) -> &Space {
        &self.two
    }

    pub fn case(&self) -> LiftCase {
        if self.one.letters_infinite() || self.one.is_finite() {
            LiftCase::Equal
        } else {
            LiftCase::EmptyAdjoined
        }
    }

    pub fn contains(&self, x: &BiPoint) -> bool {
        match x {
            BiPoint::Empty => self.one.letters_infinite(),
            BiPoint::Infinite(_) => self.two.contains(x),
            BiPoint::Finite(r) => self.one.letters_infinite() && self.tails_ok(r),
        }
    }

    /// Every word `x_i … x_{l(x)}` is a finite point of the one-sided space.
    /// Past the eventually periodic part the verdict repeats.
    fn tails_ok(&self, r: &LeftRay) -> bool {
        let depth = r.transient().len() + 2 * r.period().len() + self.one.engine.hist_len + 1;
        let w = r.expand(depth);
        (0..w.len()).all(|i| self.one.contains(&OnePoint::finite(w[i..].to_vec())))
    }

    /// Whether `z` lies in `π(Λ)`.
    pub fn projection_contains(&self, z: &OnePoint) -> bool {
        projects_onto(self.two.engine(), z, self.one.letters_infinite())
    }
}

#[derive(Debug, Clone)]
pub struct Lifted {
    pub spec: ForbiddenSpec,
    pub case: LiftCase,
    pub limit: InverseLimit,
}

/// The two-sided space built from a one-sided space whose patterns are
/// minimal for the two-sided space they define.
pub fn lift_space(one: &OneSpace) -> Result<Lifted, BridgeError> {
    let limit = InverseLimit::new(one);
    if let Some(w) = is_minimal(limit.space())? {
        return Err(w.into());
    }
    Ok(Lifted {
        spec: limit.space().spec().clone(),
        case: limit.case(),
        limit,
    })
}

/// A point of the lift of the projection of a minimal `Λ` that `Λ` lacks,
/// searched among rays with periods and transients up to `budget`.
pub fn projection_lift_gap(
    space: &Space,
    budget: usize,
    cutoff: Letter,
) -> Result<Option<BiPoint>, BridgeError> {
    let projected = project_space(space)?;
    let lifted = InverseLimit::new(&projected.one);
    let Equality::Differ(Witness::Ray(r)) = equal_spaces(lifted.space(), space, budget, cutoff)?
    else {
        return Ok(None);
    };
    Ok(lifted
        .space()
        .witness_in_cylinder(&Cylinder::plain(r))
        .filter(|x| lifted.contains(x) && !space.contains(x)))
}

/// A point of the one-sided space missing from `π(p((X̂_F)^σ))`, among
/// `a (b)^∞` with letters below `cutoff`.
pub fn inverse_limit_projection_gap(one: &OneSpace, cutoff: Letter) -> Option<OnePoint> {
    let limit = InverseLimit::new(one);
    (0..cutoff)
        .flat_map(|a| {
            (0..cutoff).map(move |b| OnePoint::infinite(vec![a], vec![b]).expect("nonempty period"))
        })
        .find(|z| one.contains(z) && !limit.projection_contains(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{fmt_one_point, fmt_point, parse_one_point, parse_pattern, parse_point};

    fn pats(ws: &[&str]) -> Vec<Pattern> {
        ws.iter().map(|w| parse_pattern(w).unwrap()).collect()
    }

    #[test]
    fn projections() {
        let (z, cont) = project(&parse_point("(1)^- . 2 3 #").unwrap());
        assert_eq!(
            (fmt_one_point(&z), cont),
            (fmt_one_point(&OnePoint::finite(vec![2, 3])), true)
        );
        assert_eq!(
            project(&parse_point("(0)^- 5 . #").unwrap()),
            (OnePoint::Empty, true)
        );
        let (z, _) = project(&parse_point("(01)^- . (01)^+").unwrap());
        assert_eq!(z, OnePoint::infinite(vec![], vec![0, 1]).unwrap());
        assert!(!project(&parse_point("(0)^- 5 @-1").unwrap()).1);
    }

    #[test]
    fn orbits() {
        let x = parse_point("(0)^- . (1)^+").unwrap();
        let o = p_inverse(&x);
        assert_eq!(o.component(1), OnePoint::infinite(vec![], vec![1]).unwrap());
        assert_eq!(
            o.component(0),
            OnePoint::infinite(vec![0], vec![1]).unwrap()
        );
        assert_eq!(o.component(0).shift(), o.component(1));
        assert_eq!(o.p().unwrap(), x);
        assert_eq!(p_inverse(&BiPoint::Empty).component(3), OnePoint::Empty);
    }

    #[test]
    fn cylinder_embedding() {
        let base = parse_point("(0)^- 1 . #").unwrap();
        let z = OnePoint::infinite(vec![], vec![2]).unwrap();
        let y = embed_in_cylinder(&base, &z).unwrap();
        assert_eq!(fmt_point(&y), "(0)^- 1 . (2)^+");
        assert_eq!(cylinder_coordinate(&base, &y).unwrap(), Some(z));
        assert_eq!(embed_in_cylinder(&base, &OnePoint::Empty).unwrap(), base);
        assert_eq!(
            embed_in_cylinder(&BiPoint::Empty, &OnePoint::Empty),
            Err(BridgeError::BadBase)
        );
    }

    #[test]
    fn one_sided_membership() {
        let one = OneSpace::new(pats(&["*1"]));
        assert!(one.contains(&parse_one_point("1 . (0)^+").unwrap()));
        assert!(!one.contains(&parse_one_point("0 . (1)^+").unwrap()));
        assert!(one.contains(&OnePoint::Empty));
        assert!(one.in_language(&[1, 0]));
        let finite = OneSpace::new(pats(&["!{0,1}", "11"]));
        assert!(!finite.letters_infinite() && !finite.is_finite());
        assert!(OneSpace::new(pats(&["!{0}"])).is_finite());
    }

    #[test]
    fn space_level_examples() {
        let golden = Space::new(ForbiddenSpec::words(pats(&["11"])));
        let p = project_space(&golden).unwrap();
        assert_eq!(p.case, ProjectionCase::Dense);
        let l = lift_space(&p.one).unwrap();
        assert_eq!(
            (l.spec.patterns(), l.case),
            (&pats(&["11"])[..], LiftCase::Equal)
        );
        let two_letters = OneSpace::new(pats(&["!{0,1}", "11"]));
        assert_eq!(
            lift_space(&two_letters).unwrap().case,
            LiftCase::EmptyAdjoined
        );
        let ex_d = Space::new(ForbiddenSpec::new(pats(&["*2"]), vec![], None));
        assert!(matches!(
            project_space(&ex_d),
            Err(BridgeError::NotMinimal(_))
        ));
        let d_min = Space::new(ForbiddenSpec::words(pats(&["1", "2"])));
        assert_eq!(
            project_space(&d_min).unwrap().one.patterns(),
            &pats(&["1", "2"])[..]
        );
    }

    #[test]
    fn lift_of_projection_can_grow() {
        let a = Space::new(ForbiddenSpec::new(vec![], vec![], Some(vec![vec![1]])));
        let p = project_space(&a).unwrap();
        assert!(p.one.patterns().is_empty());
        let gap = projection_lift_gap(&a, 2, 2).unwrap().expect("a witness");
        assert_eq!(fmt_point(&gap), "(0)^- . (0)^+");
    }

    #[test]
    fn projection_of_lift_can_shrink() {
        let one = OneSpace::new(pats(&["*1"]));
        let z = inverse_limit_projection_gap(&one, 3).expect("a witness");
        assert_eq!(fmt_one_point(&z), "1 . (0)^+");
        assert!(matches!(lift_space(&one), Err(BridgeError::NotMinimal(_))));
        let limit = InverseLimit::new(&one);
        assert!(
            limit.contains(&BiPoint::constant(0))
                && !limit.contains(&parse_point("(0)^- . 1 (0)^+").unwrap())
        );
    }

    #[test]
    fn projection_membership() {
        let golden = Space::new(ForbiddenSpec::words(pats(&["11"])));
        assert!(projection_contains(
            &golden,
            &parse_one_point("1 . (0)^+").unwrap()
        ));
        assert!(!projection_contains(
            &golden,
            &parse_one_point("1 1 . (0)^+").unwrap()
        ));
        assert!(projection_contains(&golden, &OnePoint::finite(vec![1])));
        assert!(projection_contains(&golden, &OnePoint::Empty));
    }
}
