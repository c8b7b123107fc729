//! Higher block recoding, its inverse, recoded spaces and edge shifts.
//!
//! A block letter `[a_1 … a_M]` is the [`encode_tuple`] code of the tuple.

use crate::point::{BiPoint, PointError};
use crate::space::{cell_key, Classification, Space};
use crate::text::Style;
use crate::words::{decode_tuple, encode_tuple, Cell, LeftRay, Letter, FRESH};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HbError {
    #[error("block size must be at least 1")]
    ZeroBlock,
    #[error("a block letter code does not fit in a letter")]
    Overflow,
    #[error("adjacent block letters disagree on their overlap at index {0}")]
    InconsistentOverlaps(i64),
    #[error("the space is not given by a finite set of words")]
    NotFiniteStep,
    #[error("the space is {found}-step, more than the requested {requested}")]
    StepExceeds { found: usize, requested: usize },
    #[error(transparent)]
    Point(#[from] PointError),
}

/// `(Ξx)_i = [x_{i-M+1} … x_i]` where `x_i` is a letter, else ø.
pub fn hb_encode(m: usize, x: &BiPoint) -> Result<BiPoint, HbError> {
    if m == 0 {
        return Err(HbError::ZeroBlock);
    }
    let overflow = std::cell::Cell::new(false);
    let y = x.map_windows(m - 1, 0, |w| {
        w[m - 1]?;
        let t: Vec<Letter> = w
            .iter()
            .map(|c| c.expect("letters precede every letter"))
            .collect();
        let code = encode_tuple(&t);
        overflow.set(overflow.get() || code.is_none());
        Some(code.unwrap_or(0))
    })?;
    if overflow.get() {
        return Err(HbError::Overflow);
    }
    Ok(y)
}

/// The 1-block inverse: keeps the last coordinate, after checking that
/// adjacent block letters overlap consistently.
pub fn hb_decode(m: usize, y: &BiPoint) -> Result<BiPoint, HbError> {
    if m == 0 {
        return Err(HbError::ZeroBlock);
    }
    let x = y.map_windows(0, 0, |w| {
        w[0].map(|a| *decode_tuple(a, m).last().expect("arity is positive"))
    })?;
    if hb_encode(m, &x)? != *y {
        return Err(HbError::InconsistentOverlaps(first_mismatch(m, y)));
    }
    Ok(x)
}

/// Index of the first block letter whose tuple disagrees with its left neighbour.
fn first_mismatch(m: usize, y: &BiPoint) -> i64 {
    let (left, body, right, start) = y.regions();
    let lo = start - left.len() as i64 - 1;
    let hi = start + (body.len() + right.len()) as i64 + 1;
    (lo + 1..=hi)
        .find(|&i| match (y.index(i - 1), y.index(i)) {
            (Some(a), Some(b)) => decode_tuple(a, m)[1..] != decode_tuple(b, m)[..m - 1],
            (None, Some(_)) => true,
            _ => false,
        })
        .unwrap_or(lo)
}

/// The last coordinates of an overlap-consistent word of block letters,
/// preceded by the first letter's remaining coordinates.
fn decode_word(m: usize, w: &[Letter]) -> Option<Vec<Letter>> {
    let tuples: Vec<Vec<Letter>> = w.iter().map(|&a| decode_tuple(a, m)).collect();
    if tuples.windows(2).any(|p| p[0][1..] != p[1][..m - 1]) {
        return None;
    }
    let mut out = tuples.first().map_or(vec![], |t| t[..m - 1].to_vec());
    out.extend(tuples.iter().map(|t| t[m - 1]));
    Some(out)
}

/// `Λ^[M]` for a base space `Λ`: the recoded forbidden set consists of the
/// overlap constraint plus the recoded base patterns.
#[derive(Debug, Clone)]
pub struct HigherBlockSpace {
    m: usize,
    base: Space,
}

impl HigherBlockSpace {
    pub fn new(m: usize, base: Space) -> Result<Self, HbError> {
        if m == 0 {
            return Err(HbError::ZeroBlock);
        }
        Ok(HigherBlockSpace { m, base })
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn contains(&self, y: &BiPoint) -> bool {
        hb_decode(self.m, y).is_ok_and(|x| self.base.contains(&x))
    }

    /// Whether an ø-closed word of block letters lies in `B(Λ^[M])`.
    pub fn in_language(&self, w: &[Cell]) -> bool {
        let split = w.iter().position(Option::is_none).unwrap_or(w.len());
        if w[split..].iter().any(Option::is_some) {
            return false;
        }
        let letters: Vec<Letter> = w[..split].iter().flatten().copied().collect();
        let Some(base) = decode_word(self.m, &letters) else {
            return false;
        };
        let mut cells: Vec<Cell> = base.into_iter().map(Some).collect();
        cells.resize(cells.len() + w.len() - split, None);
        self.base.in_language(&cells)
    }

    /// `B_n(Λ^[M])` over tuples of base letters below `cutoff`.
    pub fn blocks(&self, n: usize, cutoff: Letter) -> Result<Vec<Vec<Cell>>, HbError> {
        let base = self
            .base
            .blocks(n + self.m - 1, cutoff)
            .map_err(|_| HbError::NotFiniteStep)?;
        let mut out: BTreeSet<Vec<(bool, Letter)>> = BTreeSet::new();
        let mut words = Vec::new();
        for b in base {
            let w = b
                .windows(self.m)
                .map(|t| match t[self.m - 1] {
                    None => Ok(None),
                    Some(_) => {
                        encode_tuple(&t.iter().map(|c| c.expect("ø-closed")).collect::<Vec<_>>())
                            .map(Some)
                            .ok_or(HbError::Overflow)
                    }
                })
                .collect::<Result<Vec<Cell>, _>>()?;
            if out.insert(cell_key(&w)) {
                words.push(w);
            }
        }
        words.sort_by_key(|w| cell_key(w));
        Ok(words)
    }

    /// Row and column finiteness carry over; a `K`-step base gives a
    /// `max(1, K - M + 1)`-step recoding, never of finite type when the
    /// space uses infinitely many letters.
    pub fn classify(&self) -> Classification {
        let c = self.base.classify();
        Classification {
            m_step: c.m_step.map(|k| (k + 1).saturating_sub(self.m).max(1)),
            finite_type: c.finite_type && !self.base.letters_infinite(),
            ..c
        }
    }

    /// The recoded base patterns, each padded on the left to length `M`
    /// and written as block cells such as `[*2]`.
    pub fn recoded_patterns(&self) -> Vec<String> {
        self.base
            .spec()
            .patterns()
            .iter()
            .map(|p| {
                let p = if p.len() < self.m {
                    p.padded_left(self.m)
                } else {
                    p.clone()
                };
                (0..=p.len() - self.m)
                    .map(|i| format!("[{}]", Style::Plain.pattern(&p.slice(i, i + self.m))))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// Label of a block, with `*` for the abstract unmentioned letter.
fn label(w: &[Letter]) -> String {
    w.iter()
        .map(|&a| {
            if a == FRESH {
                "*".to_string()
            } else {
                Style::Plain.letter(a)
            }
        })
        .collect()
}

/// The graph of an `M`-step space: vertices are `M`-blocks, edges are
/// `(M+1)`-blocks with `i` the prefix and `t` the suffix. Lists hold the
/// blocks over letters below the cutoff; membership is decided for all
/// letters through the base space.
#[derive(Debug, Clone)]
pub struct Graph {
    m: usize,
    base: Space,
    pub vertices: Vec<Vec<Letter>>,
    pub edges: Vec<Vec<Letter>>,
}

impl Graph {
    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn i(&self, e: &[Letter]) -> Vec<Letter> {
        e[..self.m].to_vec()
    }

    pub fn t(&self, e: &[Letter]) -> Vec<Letter> {
        e[1..].to_vec()
    }

    pub fn has_vertex(&self, v: &[Letter]) -> bool {
        v.len() == self.m
            && self
                .base
                .in_language(&v.iter().map(|&a| Some(a)).collect::<Vec<_>>())
    }

    pub fn has_edge(&self, e: &[Letter]) -> bool {
        e.len() == self.m + 1
            && self
                .base
                .in_language(&e.iter().map(|&a| Some(a)).collect::<Vec<_>>())
    }

    /// Whether `v` emits infinitely many edges.
    pub fn is_emitter(&self, v: &[Letter]) -> bool {
        let mut w: Vec<Cell> = v.iter().map(|&a| Some(a)).collect();
        w.push(Some(FRESH));
        self.base.in_language(&w)
    }

    /// Listed vertices without an outgoing or incoming listed edge.
    pub fn sources_and_sinks(&self) -> Vec<Vec<Letter>> {
        self.vertices
            .iter()
            .filter(|v| {
                let out = self.edges.iter().any(|e| self.i(e) == **v);
                let inc = self.edges.iter().any(|e| self.t(e) == **v);
                !(out && inc)
            })
            .cloned()
            .collect()
    }

    /// The edge letter of an `(M+1)`-block.
    pub fn edge_letter(&self, e: &[Letter]) -> Option<Letter> {
        encode_tuple(e)
    }

    pub fn edge_of(&self, a: Letter) -> Vec<Letter> {
        decode_tuple(a, self.m + 1)
    }

    /// The conjugacy onto the edge shift.
    pub fn encode_point(&self, x: &BiPoint) -> Result<BiPoint, HbError> {
        hb_encode(self.m + 1, x)
    }

    pub fn dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in &self.vertices {
            let extra = if self.is_emitter(v) {
                ", peripheries=2"
            } else {
                ""
            };
            let _ = writeln!(s, "  \"{0}\" [label=\"{0}\"{1}];", label(v), extra);
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                label(&self.i(e)),
                label(&self.t(e)),
                label(e)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the graph of an `M`-step space at the cutoff. Blocks with an
/// unmentioned letter are represented by concrete letters below the cutoff
/// when there is one, else by the abstract letter `*`.
pub fn to_edge_shift(space: &Space, m: usize, cutoff: Letter) -> Result<Graph, HbError> {
    space
        .check_cutoff(cutoff)
        .map_err(|_| HbError::NotFiniteStep)?;
    let found = space.classify().m_step.ok_or(HbError::NotFiniteStep)?;
    if found > m {
        return Err(HbError::StepExceeds {
            found,
            requested: m,
        });
    }
    let mut letters: Vec<Letter> = (0..cutoff).collect();
    let fresh_below = (0..cutoff).any(|a| !space.mentioned().contains(&a));
    if !fresh_below && space.letters_infinite() {
        letters.push(FRESH);
    }
    let blocks = |n: usize| -> Vec<Vec<Letter>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Vec<Letter>| {
                    letters.iter().map(move |&a| [w.clone(), vec![a]].concat())
                })
                .filter(|w| space.in_language(&w.iter().map(|&a| Some(a)).collect::<Vec<_>>()))
                .collect();
        }
        out
    };
    Ok(Graph {
        m,
        base: space.clone(),
        vertices: blocks(m),
        edges: blocks(m + 1),
    })
}

/// The edge shift `Λ(G)` as a membership oracle over edge letters.
#[derive(Debug, Clone)]
pub struct EdgeSpace {
    g: Graph,
}

pub fn edge_space(g: &Graph) -> EdgeSpace {
    EdgeSpace { g: g.clone() }
}

impl EdgeSpace {
    pub fn graph(&self) -> &Graph {
        &self.g
    }

    fn walk_ok(&self, edges: &[Letter]) -> bool {
        let es: Vec<Vec<Letter>> = edges.iter().map(|&a| self.g.edge_of(a)).collect();
        es.iter().all(|e| self.g.has_edge(e))
            && es.windows(2).all(|p| self.g.t(&p[0]) == self.g.i(&p[1]))
    }

    /// Bi-infinite walks, finite walks ending at an infinite emitter, and Ø
    /// when there are infinitely many walks.
    pub fn contains(&self, y: &BiPoint) -> bool {
        match y {
            BiPoint::Empty => self.g.base.inf_infinite(),
            BiPoint::Finite(r) => {
                self.ray_ok(r) && self.g.is_emitter(&self.g.t(&self.g.edge_of(r.at(r.end()))))
            }
            BiPoint::Infinite(_) => {
                let (left, body, right, start) = y.regions();
                let lo = start - 2 * left.len() as i64;
                let hi = start + (body.len() + 2 * right.len()) as i64;
                self.walk_ok(&y.cells(lo, hi).into_iter().flatten().collect::<Vec<_>>())
            }
        }
    }

    fn ray_ok(&self, r: &LeftRay) -> bool {
        let depth = r.transient().len() + 2 * r.period().len();
        self.walk_ok(&r.expand(depth))
    }

    /// `B_n(Λ(G))` over the listed edges, sorted with ø after every letter.
    pub fn blocks(&self, n: usize) -> Vec<Vec<Cell>> {
        let edges: Vec<Letter> = self
            .g
            .edges
            .iter()
            .filter(|e| !e.contains(&FRESH))
            .filter_map(|e| self.g.edge_letter(e))
            .collect();
        let mut out = Vec::new();
        let mut walks: Vec<Vec<Letter>> = vec![vec![]];
        for k in 0..=n {
            for w in &walks {
                let ends_ok = match w.last() {
                    None => self.g.base.inf_infinite(),
                    Some(&a) => self.g.is_emitter(&self.g.t(&self.g.edge_of(a))),
                };
                if k == n || ends_ok {
                    let mut cells: Vec<Cell> = w.iter().map(|&a| Some(a)).collect();
                    cells.resize(n, None);
                    out.push(cells);
                }
            }
            if k == n {
                break;
            }
            walks = walks
                .into_iter()
                .flat_map(|w| edges.iter().map(move |&e| [w.clone(), vec![e]].concat()))
                .filter(|w| self.walk_ok(w))
                .collect();
        }
        out.sort_by_key(|w| cell_key(w));
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ForbiddenSpec;
    use crate::text::{parse_pattern, parse_point};

    fn space(ws: &[&str]) -> Space {
        Space::new(ForbiddenSpec::words(
            ws.iter().map(|w| parse_pattern(w).unwrap()).collect(),
        ))
    }

    #[test]
    fn encode_examples() {
        let y = hb_encode(2, &parse_point("(0)^- . (1)^+").unwrap()).unwrap();
        assert_eq!(Style::Block(2).point(&y), "([00])^- . [01] ([11])^+");
        let c = hb_encode(3, &BiPoint::constant(4)).unwrap();
        assert_eq!(c, BiPoint::constant(encode_tuple(&[4, 4, 4]).unwrap()));
        assert_eq!(hb_encode(2, &BiPoint::Empty).unwrap(), BiPoint::Empty);
        let f = parse_point("(0)^- 1 . #").unwrap();
        assert_eq!(hb_encode(2, &f).unwrap().length(), f.length());
    }

    #[test]
    fn decode_examples() {
        let x = parse_point("(01)^- . (01)^+").unwrap();
        assert_eq!(hb_decode(2, &hb_encode(2, &x).unwrap()).unwrap(), x);
        let bad = BiPoint::infinite(
            vec![encode_tuple(&[0, 0]).unwrap()],
            vec![
                encode_tuple(&[0, 1]).unwrap(),
                encode_tuple(&[0, 0]).unwrap(),
            ],
            vec![encode_tuple(&[0, 0]).unwrap()],
            0,
        )
        .unwrap();
        assert!(matches!(
            hb_decode(2, &bad),
            Err(HbError::InconsistentOverlaps(1))
        ));
        assert_eq!(hb_decode(2, &BiPoint::Empty).unwrap(), BiPoint::Empty);
    }

    #[test]
    fn recoded_space() {
        let h = HigherBlockSpace::new(2, space(&["11"])).unwrap();
        assert_eq!(h.recoded_patterns(), ["[11]"]);
        let x = parse_point("(0)^- . 1 (0)^+").unwrap();
        assert!(h.contains(&hb_encode(2, &x).unwrap()));
        assert!(!h.contains(&hb_encode(2, &parse_point("(0)^- . 1 1 (0)^+").unwrap()).unwrap()));
        let padded = HigherBlockSpace::new(2, space(&["2"])).unwrap();
        assert_eq!(padded.recoded_patterns(), ["[*2]"]);
        assert_eq!(h.classify().m_step, Some(1));
        assert!(!h.classify().finite_type);
    }

    #[test]
    fn golden_mean_graph() {
        let g = to_edge_shift(&space(&["11"]), 1, 2).unwrap();
        assert_eq!(g.vertices, [vec![0], vec![1]]);
        assert_eq!(g.edges, [vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(g.sources_and_sinks().is_empty());
        assert!(g.dot().contains("\"0\" [label=\"0\", peripheries=2]"));
        let es = edge_space(&g);
        let loop00 = BiPoint::constant(encode_tuple(&[0, 0]).unwrap());
        assert!(es.contains(&loop00));
        let alt = g
            .encode_point(&parse_point("(01)^- . (01)^+").unwrap())
            .unwrap();
        assert!(es.contains(&alt));
        let h = HigherBlockSpace::new(2, space(&["11"])).unwrap();
        for n in 1..=4 {
            assert_eq!(es.blocks(n), h.blocks(n, 2).unwrap());
        }
    }

    #[test]
    fn graph_errors_and_degenerate_cases() {
        assert!(matches!(
            to_edge_shift(&space(&["101"]), 1, 2),
            Err(HbError::StepExceeds { found: 2, .. })
        ));
        let full = to_edge_shift(&space(&[]), 0, 3).unwrap();
        assert_eq!(full.vertices, [Vec::<Letter>::new()]);
        assert_eq!(full.edges.len(), 3);
        let g = to_edge_shift(&space(&["*2"]), 1, 3).unwrap();
        assert!(g.edges.iter().all(|e| e[1] != 2));
        let fin = space(&["*2", "0*"]);
        let g = to_edge_shift(&fin, 1, 3).unwrap();
        let es = edge_space(&g);
        let r = g.encode_point(&parse_point("(1)^- . #").unwrap()).unwrap();
        assert!(es.contains(&r));
    }
}
