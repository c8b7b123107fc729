//! Finite product automaton deciding the infinite part of a forbidden-word space.
//!
//! A state pairs the last `L - 1` letters read (`L` the longest pattern) with
//! a tracker for forbidden tails: the exact left ray read so far, or `None`
//! once no forbidden tail can ever match again. Letters outside the mentioned
//! set are collapsed to [`FRESH`]; patterns cannot tell them apart and any
//! ray holding one can never equal a forbidden tail.

use crate::words::{conjugate, LeftRay, Letter, Pattern, FRESH};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct State {
    pub hist: Vec<Letter>,
    pub track: Option<LeftRay>,
}

#[derive(Debug, Clone)]
pub(crate) struct Engine {
    pub patterns: Vec<Pattern>,
    pub tails: Vec<LeftRay>,
    pub allow: Option<Vec<Vec<Letter>>>,
    pub mentioned: BTreeSet<Letter>,
    /// Mentioned letters in order, then [`FRESH`].
    pub alphabet: Vec<Letter>,
    pub hist_len: usize,
    pub t_max: usize,
    /// Reachable states admitting an infinite future, in sorted order.
    pub trim: Vec<State>,
    pub trim_index: HashMap<State, usize>,
    /// `next[s][i]`: trim successor of trim state `s` on `alphabet[i]`.
    pub next: Vec<Vec<Option<usize>>>,
    pub inf_infinite: bool,
}

impl Engine {
    pub fn new(
        patterns: Vec<Pattern>,
        tails: Vec<LeftRay>,
        allow: Option<Vec<Vec<Letter>>>,
    ) -> Self {
        let mut mentioned: BTreeSet<Letter> = patterns.iter().flat_map(|p| p.letters()).collect();
        mentioned.extend(tails.iter().flat_map(|r| r.letters()));
        if let Some(a) = &allow {
            mentioned.extend(a.iter().flatten().copied());
        }
        let mut alphabet: Vec<Letter> = mentioned.iter().copied().collect();
        alphabet.push(FRESH);
        let hist_len = patterns.iter().map(Pattern::len).max().unwrap_or(1).max(1) - 1;
        let t_max = tails.iter().map(|r| r.transient().len()).max().unwrap_or(0);
        let mut e = Engine {
            patterns,
            tails,
            allow,
            mentioned,
            alphabet,
            hist_len,
            t_max,
            trim: Vec::new(),
            trim_index: HashMap::new(),
            next: Vec::new(),
            inf_infinite: false,
        };
        let starts = e.starts();
        let (order, alive) = e.explore(&starts);
        e.trim = order.into_iter().filter(|s| alive.contains(s)).collect();
        e.trim.sort();
        e.trim_index = e
            .trim
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        e.next = e
            .trim
            .iter()
            .map(|s| {
                e.alphabet
                    .iter()
                    .map(|&a| e.step(s, a).and_then(|t| e.trim_index.get(&t).copied()))
                    .collect()
            })
            .collect();
        let fresh = e.alphabet.len() - 1;
        e.inf_infinite = e
            .next
            .iter()
            .any(|row| row[fresh].is_some() || row.iter().flatten().count() >= 2);
        e
    }

    pub fn abstract_letter(&self, a: Letter) -> Letter {
        if self.mentioned.contains(&a) {
            a
        } else {
            FRESH
        }
    }

    pub fn letter_index(&self, a: Letter) -> usize {
        let a = self.abstract_letter(a);
        self.alphabet
            .binary_search(&a)
            .expect("abstract letters are in the alphabet")
    }

    fn pattern_hit(&self, w: &[Letter]) -> bool {
        self.patterns
            .iter()
            .any(|p| p.len() <= w.len() && p.matches(&w[w.len() - p.len()..]))
    }

    /// One transition on an abstract letter; `None` when a pattern or a
    /// forbidden tail completes.
    pub fn step(&self, s: &State, a: Letter) -> Option<State> {
        let mut w = s.hist.clone();
        w.push(a);
        if self.pattern_hit(&w) {
            return None;
        }
        let hist = w[w.len().saturating_sub(self.hist_len)..].to_vec();
        let track = match &s.track {
            Some(r) if a != FRESH => {
                let r = r.push(a).with_end(0);
                if self.tails.iter().any(|f| f.same_shape(&r)) {
                    return None;
                }
                (r.transient().len() <= self.t_max).then_some(r)
            }
            _ => None,
        };
        Some(State { hist, track })
    }

    /// Breadth-first closure of `starts` under [`Engine::step`] and the subset
    /// of it with an infinite future.
    pub fn explore(&self, starts: &[State]) -> (Vec<State>, HashSet<State>) {
        let mut index: HashMap<State, usize> = HashMap::new();
        let mut order: Vec<State> = Vec::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        for s in starts {
            if !index.contains_key(s) {
                index.insert(s.clone(), order.len());
                order.push(s.clone());
                queue.push_back(order.len() - 1);
            }
        }
        while let Some(i) = queue.pop_front() {
            let mut out = Vec::new();
            for &a in &self.alphabet {
                if let Some(t) = self.step(&order[i], a) {
                    let j = *index.entry(t.clone()).or_insert_with(|| {
                        order.push(t);
                        queue.push_back(order.len() - 1);
                        order.len() - 1
                    });
                    out.push(j);
                }
            }
            succ.push(out);
        }
        let n = order.len();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut outdeg: Vec<usize> = vec![0; n];
        for (i, out) in succ.iter().enumerate() {
            outdeg[i] = out.len();
            for &j in out {
                pred[j].push(i);
            }
        }
        let mut dead: Vec<bool> = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&i| outdeg[i] == 0).collect();
        while let Some(i) = stack.pop() {
            if dead[i] {
                continue;
            }
            dead[i] = true;
            for &p in &pred[i] {
                outdeg[p] -= 1;
                if outdeg[p] == 0 {
                    stack.push(p);
                }
            }
        }
        let alive = order
            .iter()
            .zip(&dead)
            .filter(|(_, d)| !**d)
            .map(|(s, _)| s.clone())
            .collect();
        (order, alive)
    }

    pub fn is_alive(&self, s: &State) -> bool {
        self.trim_index.contains_key(s) || self.explore(std::slice::from_ref(s)).1.contains(s)
    }

    /// States at which some bi-infinite point can sit after reading its left ray.
    fn starts(&self) -> Vec<State> {
        let track = |r: LeftRay| (!self.tails.is_empty()).then_some(r);
        if let Some(allow) = &self.allow {
            let mut out = Vec::new();
            for period in allow {
                for k in 0..period.len() {
                    let r = LeftRay::new(crate::words::rotate_left(period, k), vec![], 0)
                        .expect("nonempty period");
                    if self.ray_ok(&r) {
                        out.push(State {
                            hist: r.expand(self.hist_len),
                            track: track(r),
                        });
                    }
                }
            }
            return out;
        }
        let nodes = self.clean_hists();
        let index: HashMap<&Vec<Letter>, usize> =
            nodes.iter().enumerate().map(|(i, h)| (h, i)).collect();
        let edges: Vec<Vec<(Letter, usize)>> = nodes
            .iter()
            .map(|h| {
                let mut out = Vec::new();
                for &a in &self.alphabet {
                    let mut w = h.clone();
                    w.push(a);
                    if !self.pattern_hit(&w) {
                        let t = w[1..].to_vec();
                        out.push((a, index[&t]));
                    }
                }
                out
            })
            .collect();
        let comp = tarjan(
            &edges
                .iter()
                .map(|e| e.iter().map(|x| x.1).collect())
                .collect::<Vec<Vec<usize>>>(),
        );
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (v, &c) in comp.iter().enumerate() {
            members[c].push(v);
        }
        let mut out = Vec::new();
        for group in &members {
            let c = comp[group[0]];
            let internal: Vec<(usize, Letter, usize)> = group
                .iter()
                .flat_map(|&v| {
                    edges[v]
                        .iter()
                        .filter(|e| comp[e.1] == c)
                        .map(move |&(a, t)| (v, a, t))
                })
                .collect();
            if internal.is_empty() {
                continue;
            }
            let rich = internal.len() > group.len() || internal.iter().any(|e| e.1 == FRESH);
            if rich {
                out.extend(group.iter().map(|&v| State {
                    hist: nodes[v].clone(),
                    track: None,
                }));
                continue;
            }
            // A single cycle: walk it once and read the ray ending at each node.
            let mut walk = vec![group[0]];
            let mut letters = Vec::new();
            loop {
                let &(_, a, t) = internal
                    .iter()
                    .find(|e| e.0 == *walk.last().unwrap())
                    .expect("cycle edge");
                letters.push(a);
                if t == group[0] {
                    break;
                }
                walk.push(t);
            }
            let n = letters.len();
            for (i, &v) in walk.iter().enumerate() {
                // letters[i - 1] arrives at walk[i]; letters[n - 1] arrives at walk[0].
                let r = LeftRay::new(crate::words::rotate_left(&letters, i), vec![], 0)
                    .expect("nonempty cycle");
                debug_assert_eq!(r.at(0), letters[(i + n - 1) % n]);
                if !self.tails.iter().any(|f| r.contains_tail(f)) {
                    out.push(State {
                        hist: nodes[v].clone(),
                        track: track(r),
                    });
                }
            }
        }
        out
    }

    /// Histories of length `L - 1` over the abstract alphabet without pattern hits.
    fn clean_hists(&self) -> Vec<Vec<Letter>> {
        let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..self.hist_len {
            let mut grown = Vec::new();
            for h in &level {
                for &a in &self.alphabet {
                    let mut w = h.clone();
                    w.push(a);
                    if !self.pattern_hit(&w) {
                        grown.push(w);
                    }
                }
            }
            level = grown;
        }
        level
    }

    /// The ray avoids every pattern and forbidden tail and has an allowed period.
    pub fn ray_ok(&self, r: &LeftRay) -> bool {
        self.patterns.iter().all(|p| r.occurrences(p).is_none())
            && !self.tails.iter().any(|f| r.contains_tail(f))
            && self
                .allow
                .as_ref()
                .is_none_or(|a| a.iter().any(|p| conjugate(p, r.period())))
    }

    /// The state reached after reading the ray, if the ray is legal.
    pub fn ray_state(&self, r: &LeftRay) -> Option<State> {
        if !self.ray_ok(r) {
            return None;
        }
        let hist = r
            .expand(self.hist_len)
            .into_iter()
            .map(|a| self.abstract_letter(a))
            .collect();
        let exact = !self.tails.is_empty()
            && r.letters().iter().all(|a| self.mentioned.contains(a))
            && r.transient().len() <= self.t_max;
        Some(State {
            hist,
            track: exact.then(|| r.with_end(0)),
        })
    }

    /// Trim states reached by reading `w` from any trim state.
    pub fn run(&self, from: &BTreeSet<usize>, w: &[Letter]) -> BTreeSet<usize> {
        let mut cur = from.clone();
        for &a in w {
            let i = self.letter_index(a);
            cur = cur.iter().filter_map(|&s| self.next[s][i]).collect();
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn all_trim(&self) -> BTreeSet<usize> {
        (0..self.trim.len()).collect()
    }

    /// Whether `w` occurs in some point of the infinite part.
    pub fn word_in_lang(&self, w: &[Letter]) -> bool {
        !self.trim.is_empty() && !self.run(&self.all_trim(), w).is_empty()
    }
}

/// Strongly connected component id of every vertex.
pub(crate) fn tarjan(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            if *k < succ[v].len() {
                let w = succ[v][*k];
                *k += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("stack holds the component");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}
