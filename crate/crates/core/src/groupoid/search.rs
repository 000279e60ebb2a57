use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::kgraph::{EdgePair, SquareSystem};
use crate::pi1::AbelianSeparator;
use crate::skeleton::{EdgeId, Skeleton, VertexId};

use super::moves::apply_letters;
use super::{apply_move, gword_degree, reduce_letters, DegreeZ, Derivation, GWord, Move, Rule, SignedEdge, Step};

/// Limits for the word search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Longest intermediate word; `None` means `2·max(|w₁|, |w₂|) + 4` on
    /// the reduced inputs.
    pub max_len: Option<usize>,
    /// Newly discovered words allowed per call, over all deepening rounds.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: None,
            max_nodes: 1_000_000,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: usize) -> Self {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }
}

/// An invariant that separates two words, with its two values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Different (range, source).
    Endpoints {
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    /// Different `d′`.
    Degree { first: DegreeZ, second: DegreeZ },
    /// Exponent sums over the non-tree edges differ modulo the relators.
    AbelianImage { first: Vec<i64>, second: Vec<i64> },
    /// No squares touch the component, so the groupoid is free there and
    /// distinct reduced words are distinct elements.
    FreeReduction { first: GWord, second: GWord },
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::Endpoints { .. } => "endpoints",
            Witness::Degree { .. } => "degree",
            Witness::AbelianImage { .. } => "abelian-image",
            Witness::FreeReduction { .. } => "free-reduction",
        }
    }

    /// The two values as text.
    pub fn values(&self, sk: &Skeleton) -> (String, String) {
        let ends = |(r, s): (VertexId, VertexId)| format!("{} <- {}", sk.vertex_name(r), sk.vertex_name(s));
        let vec = |v: &[i64]| format!("{v:?}");
        match self {
            Witness::Endpoints { first, second } => (ends(*first), ends(*second)),
            Witness::Degree { first, second } => (first.to_string(), second.to_string()),
            Witness::AbelianImage { first, second } => (vec(first), vec(second)),
            Witness::FreeReduction { first, second } => (first.display(sk).to_string(), second.display(sk).to_string()),
        }
    }
}

/// What an exhausted search used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpent {
    pub nodes: usize,
    pub max_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityVerdict {
    Equal(Derivation),
    Distinct(Witness),
    Unknown(SearchSpent),
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityVerdict::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EqualityVerdict::Distinct(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, EqualityVerdict::Unknown(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            EqualityVerdict::Equal(_) => "equal",
            EqualityVerdict::Distinct(_) => "distinct",
            EqualityVerdict::Unknown(_) => "unknown",
        }
    }
}

impl fmt::Display for SearchSpent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nodes, words up to length {}", self.nodes, self.max_len)
    }
}

/// Decides equality in the fundamental groupoid as far as the budget
/// allows. Per-component data (abelian separators, square-free flags) is
/// computed once and reused across calls.
///
/// A solver can also learn which single edges are equal
/// ([`WordSolver::learn_edge_lemmas`]); the search then may replace a letter
/// by an equal one. Such a replacement is expanded into the underlying moves
/// when a derivation is assembled, so derivations never cite lemmas.
pub struct WordSolver<'a> {
    sys: &'a SquareSystem,
    budget: Budget,
    component: Vec<usize>,
    has_squares: Vec<bool>,
    separators: Vec<AbelianSeparator>,
    /// Letters `x` with `r(x) = v`, indexed by `v`.
    at_vertex: Vec<Vec<SignedEdge>>,
    sharing: HashSet<(EdgeId, EdgeId)>,
    /// Edge ↦ (representative, derivation `[e] → [rep]`).
    lemmas: HashMap<EdgeId, (EdgeId, Derivation)>,
    /// Representative ↦ all edges known equal to it, sorted.
    lemma_classes: HashMap<EdgeId, Vec<EdgeId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edit {
    Basic(Move),
    /// Replace the letter at `pos` by the same-signed letter of `to`.
    Lemma {
        pos: usize,
        to: EdgeId,
    },
}

enum Level {
    Met(Derivation),
    Exhausted { pruned: bool },
    OutOfNodes,
}

type Parents = HashMap<Vec<SignedEdge>, Option<(Vec<SignedEdge>, Edit)>>;

impl<'a> WordSolver<'a> {
    pub fn new(sys: &'a SquareSystem, budget: Budget) -> Self {
        let sk = sys.skeleton();
        let comps = sk.connected_components();
        let mut component = vec![0; sk.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for v in c {
                component[v.index()] = i;
            }
        }
        let mut has_squares = vec![false; comps.len()];
        let mut sharing = HashSet::new();
        for sq in sys.squares() {
            has_squares[component[sk.edge(sq.lhs.0).range.index()]] = true;
            let es = [sq.lhs.0, sq.lhs.1, sq.rhs.0, sq.rhs.1];
            for &x in &es {
                for &y in &es {
                    sharing.insert((x, y));
                }
            }
        }
        let separators = comps
            .iter()
            .map(|c| AbelianSeparator::new(sys, c[0]).expect("component vertex exists"))
            .collect();
        let mut at_vertex = vec![Vec::new(); sk.vertex_count()];
        for id in sk.edges_sorted() {
            for l in [SignedEdge::pos(id), SignedEdge::neg(id)] {
                at_vertex[l.range(sk).index()].push(l);
            }
        }
        WordSolver {
            sys,
            budget,
            component,
            has_squares,
            separators,
            at_vertex,
            sharing,
            lemmas: HashMap::new(),
            lemma_classes: HashMap::new(),
        }
    }

    pub fn system(&self) -> &'a SquareSystem {
        self.sys
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Whether squares act on the component of `v`.
    pub fn has_squares_at(&self, v: VertexId) -> bool {
        self.has_squares[self.component[v.index()]]
    }

    /// The representative of `e` among learned edge equalities, with a
    /// derivation from `[e]` to `[rep]`.
    pub fn edge_lemma(&self, e: EdgeId) -> Option<(EdgeId, &Derivation)> {
        self.lemmas.get(&e).map(|(r, d)| (*r, d))
    }

    /// Groups parallel edges of one color into classes of edges proven equal,
    /// repeating until a full pass proves nothing new: an equality found in
    /// one pass becomes a substitution move for the next.
    pub fn learn_edge_lemmas(&mut self) {
        let sk = self.sys.skeleton();
        let mut groups: Vec<((VertexId, VertexId, usize), Vec<EdgeId>)> = Vec::new();
        for id in sk.edges_sorted() {
            let e = sk.edge(id);
            if !self.has_squares_at(e.range) {
                continue;
            }
            let key = (e.range, e.source, e.color);
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, list)) => list.push(id),
                None => groups.push((key, vec![id])),
            }
        }
        loop {
            let mut merged = false;
            for (_, edges) in &groups {
                for (i, &e) in edges.iter().enumerate() {
                    for &r in &edges[..i] {
                        let (re, rr) = (self.rep(e), self.rep(r));
                        if re == rr || rr != r {
                            continue;
                        }
                        let w = |x: EdgeId| {
                            GWord::from_parts(sk.edge(x).range, sk.edge(x).source, vec![SignedEdge::pos(x)])
                        };
                        if let EqualityVerdict::Equal(d) = self.solve(&w(re), &w(r)) {
                            self.merge(re, r, d);
                            merged = true;
                        }
                    }
                }
            }
            if !merged {
                break;
            }
        }
    }

    fn rep(&self, e: EdgeId) -> EdgeId {
        self.lemmas.get(&e).map_or(e, |(r, _)| *r)
    }

    /// Merges the class of representative `a` into the class of
    /// representative `b`, given a derivation `[a] → [b]`.
    fn merge(&mut self, a: EdgeId, b: EdgeId, a_to_b: Derivation) {
        let sk = self.sys.skeleton();
        let single = |x: EdgeId| GWord::from_parts(sk.edge(x).range, sk.edge(x).source, vec![SignedEdge::pos(x)]);
        let moved = self.lemma_classes.remove(&a).unwrap_or_else(|| vec![a]);
        for x in &moved {
            let to_a = match self.lemmas.get(x) {
                Some((_, d)) => d.clone(),
                None => Derivation::trivial(single(*x)),
            };
            self.lemmas.insert(*x, (b, to_a.then(a_to_b.clone())));
        }
        self.lemmas
            .entry(b)
            .or_insert_with(|| (b, Derivation::trivial(single(b))));
        let class = self.lemma_classes.entry(b).or_insert_with(|| vec![b]);
        class.extend(moved);
        class.sort();
    }

    /// The cheap invariants, in order: endpoints, `d′`, the abelian image,
    /// and (when no squares act) free reduction.
    pub fn separate(&self, w1: &GWord, w2: &GWord) -> Option<Witness> {
        let sk = self.sys.skeleton();
        if (w1.range(), w1.source()) != (w2.range(), w2.source()) {
            return Some(Witness::Endpoints {
                first: (w1.range(), w1.source()),
                second: (w2.range(), w2.source()),
            });
        }
        let (d1, d2) = (gword_degree(sk, w1), gword_degree(sk, w2));
        if d1 != d2 {
            return Some(Witness::Degree { first: d1, second: d2 });
        }
        let (r1, r2) = (w1.free_reduce(), w2.free_reduce());
        if r1 == r2 {
            return None;
        }
        let sep = &self.separators[self.component[w1.range().index()]];
        if sep.separates(w1, w2) {
            return Some(Witness::AbelianImage {
                first: sep.image(w1),
                second: sep.image(w2),
            });
        }
        if !self.has_squares_at(w1.range()) {
            return Some(Witness::FreeReduction { first: r1, second: r2 });
        }
        None
    }

    pub fn solve(&self, w1: &GWord, w2: &GWord) -> EqualityVerdict {
        if let Some(w) = self.separate(w1, w2) {
            return EqualityVerdict::Distinct(w);
        }
        let (r1, r2) = (w1.free_reduce(), w2.free_reduce());
        if r1 == r2 {
            let mut d = Derivation::trivial(w1.clone());
            d.push_reduce(w2.clone());
            return EqualityVerdict::Equal(d);
        }
        let longest = r1.len().max(r2.len());
        let cap = self.budget.max_len.unwrap_or(2 * longest + 4).max(longest);
        let mut nodes = 0;
        let mut len = longest;
        loop {
            let mut outcome = self.level(&r1, &r2, len, true, &mut nodes);
            if let Level::Exhausted { pruned: true } = outcome {
                outcome = self.level(&r1, &r2, len, false, &mut nodes);
            }
            match outcome {
                Level::Met(middle) => {
                    let mut d = Derivation::trivial(w1.clone());
                    d.push_reduce(r1.clone());
                    let mut d = d.then(middle);
                    d.push_reduce(w2.clone());
                    return EqualityVerdict::Equal(d);
                }
                Level::OutOfNodes => {
                    return EqualityVerdict::Unknown(SearchSpent { nodes, max_len: len });
                }
                Level::Exhausted { .. } if len >= cap => {
                    return EqualityVerdict::Unknown(SearchSpent { nodes, max_len: len });
                }
                Level::Exhausted { .. } => len = (len + 2).min(cap),
            }
        }
    }

    fn expand(
        &self,
        w: &[SignedEdge],
        anchor: VertexId,
        max_len: usize,
        restricted: bool,
        pruned: &mut bool,
        out: &mut Vec<(Edit, Vec<SignedEdge>)>,
    ) {
        let sk = self.sys.skeleton();
        for pos in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[pos], w[pos + 1]);
            let from: EdgePair = match (x.inverse, y.inverse) {
                (false, false) => (x.edge, y.edge),
                (true, true) => (y.edge, x.edge),
                _ => continue,
            };
            for &to in self.sys.partners(from) {
                let mv = Move::Square {
                    pos,
                    to,
                    inverted: x.inverse,
                };
                if let Some(n) = apply_letters(self.sys, w, &mv) {
                    out.push((Edit::Basic(mv), n));
                }
            }
        }
        if !self.lemmas.is_empty() {
            for (pos, l) in w.iter().enumerate() {
                let Some(class) = self.lemma_classes.get(&self.rep(l.edge)) else {
                    continue;
                };
                for &to in class.iter().filter(|&&to| to != l.edge) {
                    let mut n = w.to_vec();
                    n[pos] = SignedEdge {
                        edge: to,
                        inverse: l.inverse,
                    };
                    out.push((Edit::Lemma { pos, to }, reduce_letters(&n)));
                }
            }
        }
        if w.len() + 2 > max_len {
            return;
        }
        for pos in 0..=w.len() {
            let at = if pos < w.len() {
                w[pos].range(sk)
            } else if let Some(last) = w.last() {
                last.source(sk)
            } else {
                anchor
            };
            for &letter in &self.at_vertex[at.index()] {
                if restricted {
                    let near = |i: Option<usize>| {
                        i.and_then(|i| w.get(i))
                            .is_some_and(|n| self.sharing.contains(&(n.edge, letter.edge)))
                    };
                    if !near(pos.checked_sub(1)) && !near(Some(pos)) {
                        *pruned = true;
                        continue;
                    }
                }
                let mv = Move::Insert { pos, letter };
                let mut n = Vec::with_capacity(w.len() + 2);
                n.extend_from_slice(&w[..pos]);
                n.push(letter);
                n.push(letter.inv());
                n.extend_from_slice(&w[pos..]);
                out.push((Edit::Basic(mv), n));
            }
        }
    }

    /// One bidirectional breadth-first search with words capped at `max_len`.
    fn level(&self, r1: &GWord, r2: &GWord, max_len: usize, restricted: bool, nodes: &mut usize) -> Level {
        let anchor = r1.range();
        let mut fwd: Parents = HashMap::from([(r1.letters().to_vec(), None)]);
        let mut bwd: Parents = HashMap::from([(r2.letters().to_vec(), None)]);
        let mut ff = vec![r1.letters().to_vec()];
        let mut bf = vec![r2.letters().to_vec()];
        let mut pruned = false;
        let mut buf = Vec::new();
        loop {
            if ff.is_empty() || bf.is_empty() {
                return Level::Exhausted { pruned };
            }
            let forward = ff.len() <= bf.len();
            let (this, other, frontier) = if forward {
                (&mut fwd, &bwd, &mut ff)
            } else {
                (&mut bwd, &fwd, &mut bf)
            };
            let mut next = Vec::new();
            for w in frontier.iter() {
                buf.clear();
                self.expand(w, anchor, max_len, restricted, &mut pruned, &mut buf);
                for (edit, n) in buf.drain(..) {
                    if this.contains_key(&n) {
                        continue;
                    }
                    *nodes += 1;
                    if *nodes > self.budget.max_nodes {
                        return Level::OutOfNodes;
                    }
                    this.insert(n.clone(), Some((w.clone(), edit)));
                    if other.contains_key(&n) {
                        return Level::Met(self.assemble(r1, &fwd, &bwd, n));
                    }
                    next.push(n);
                }
            }
            *frontier = next;
        }
    }

    /// Derivation from `from` to the result of `edit`.
    fn edit_derivation(&self, from: &GWord, edit: Edit) -> Derivation {
        match edit {
            Edit::Basic(mv) => {
                let to = apply_move(self.sys, from, &mv).expect("recorded move applies");
                Derivation {
                    start: from.clone(),
                    steps: vec![Step {
                        rule: Rule::Move(mv),
                        reversed: false,
                        word: to,
                    }],
                }
            }
            Edit::Lemma { pos, to } => {
                let l = from.letters()[pos];
                let (_, up) = &self.lemmas[&l.edge];
                let (_, down) = &self.lemmas[&to];
                let mut d = up.clone().then(down.reversed());
                if l.inverse {
                    d = d.inverted();
                }
                let mut d = d.in_context(self.sys, &from.letters()[..pos], &from.letters()[pos + 1..]);
                let reduced = d.end().free_reduce();
                d.push_reduce(reduced);
                d
            }
        }
    }

    fn assemble(&self, r1: &GWord, fwd: &Parents, bwd: &Parents, meet: Vec<SignedEdge>) -> Derivation {
        let word = |letters: Vec<SignedEdge>| GWord::from_parts(r1.range(), r1.source(), letters);
        let mut head = Vec::new();
        let mut at = meet.clone();
        while let Some(Some((prev, edit))) = fwd.get(&at) {
            head.push((prev.clone(), *edit));
            at = prev.clone();
        }
        let mut d = Derivation::trivial(r1.clone());
        for (prev, edit) in head.into_iter().rev() {
            d = d.then(self.edit_derivation(&word(prev), edit));
        }
        let mut at = meet;
        while let Some(Some((prev, edit))) = bwd.get(&at) {
            d = d.then(self.edit_derivation(&word(prev.clone()), *edit).reversed());
            at = prev.clone();
        }
        d
    }
}

/// One-off equality check; see [`WordSolver`] for repeated queries. When the
/// plain search gives up, single-edge equalities are learned and the search
/// is repeated with them.
pub fn equal_in_g(sys: &SquareSystem, w1: &GWord, w2: &GWord, budget: Budget) -> EqualityVerdict {
    let mut solver = WordSolver::new(sys, budget);
    let first = solver.solve(w1, w2);
    if !first.is_unknown() {
        return first;
    }
    solver.learn_edge_lemmas();
    if solver.lemmas.is_empty() {
        return first;
    }
    solver.solve(w1, w2)
}
