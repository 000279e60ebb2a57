//! k-graphs presented by a 1-skeleton and a set of commuting squares.
//!
//! A [`SquareSystem`] is the raw presentation: a skeleton plus relations
//! `ef = gh` between 2-edge paths, checked only for shape. A [`KGraph`] is a
//! square system that passed [`SquareSystem::validate`], which is what makes
//! color-sorted paths a set of canonical representatives.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::skeleton::{Color, Degree, EdgeId, EdgePath, Skeleton, VertexId};

pub type EdgePair = (EdgeId, EdgeId);

/// The relation `lhs.0 lhs.1 = rhs.0 rhs.1` between two factorizations of a
/// degree `n_i + n_j` element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub lhs: EdgePair,
    pub rhs: EdgePair,
}

impl Square {
    pub fn new(e: EdgeId, f: EdgeId, g: EdgeId, h: EdgeId) -> Self {
        Square {
            lhs: (e, f),
            rhs: (g, h),
        }
    }

    pub fn reversed(self) -> Self {
        Square {
            lhs: self.rhs,
            rhs: self.lhs,
        }
    }

    /// Checks `color(e) = color(h) != color(f) = color(g)` and that `ef` and
    /// `gh` are parallel paths.
    pub fn check(&self, sk: &Skeleton) -> Result<()> {
        let (e, f) = self.lhs;
        let (g, h) = self.rhs;
        for id in [e, f, g, h] {
            if id.index() >= sk.edge_count() {
                return Err(Error::UnknownEdge(format!("#{}", id.index())));
            }
        }
        let bad = |reason: &str| Error::MalformedSquare {
            square: self.display(sk).to_string(),
            reason: reason.to_owned(),
        };
        let (ee, ef, eg, eh) = (sk.edge(e), sk.edge(f), sk.edge(g), sk.edge(h));
        if ee.color != eh.color || ef.color != eg.color {
            return Err(bad("degrees are not interchanged"));
        }
        if ee.color == ef.color {
            return Err(bad("edges do not have orthogonal degrees"));
        }
        if ee.source != ef.range || eg.source != eh.range {
            return Err(bad("a side is not a composable path"));
        }
        if ef.source != eh.source || ee.range != eg.range {
            return Err(bad("the two sides are not parallel"));
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, sk: &'a Skeleton) -> impl fmt::Display + 'a {
        DisplaySquare { sq: *self, sk }
    }
}

struct DisplaySquare<'a> {
    sq: Square,
    sk: &'a Skeleton,
}

impl fmt::Display for DisplaySquare<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |e| self.sk.edge_name(e);
        write!(
            f,
            "{} {} = {} {}",
            n(self.sq.lhs.0),
            n(self.sq.lhs.1),
            n(self.sq.rhs.0),
            n(self.sq.rhs.1)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// No square has this orthogonal composable pair on either side.
    MissingSquare(EdgePair),
    /// More than one declared square has this left-hand side.
    DuplicateSquare(EdgePair),
    /// Some side of this square is related to a third path, so `ef ↦ gh` is
    /// not an involution.
    BrokenInvolution(Square),
    /// The two hexagon routes reversing the color order of `triple` disagree.
    CubeInconsistency {
        triple: [EdgeId; 3],
        first: [EdgeId; 3],
        second: [EdgeId; 3],
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FindingKind {
    MissingSquare,
    DuplicateSquare,
    BrokenInvolution,
    CubeInconsistency,
}

impl Finding {
    pub fn kind(&self) -> FindingKind {
        match self {
            Finding::MissingSquare(_) => FindingKind::MissingSquare,
            Finding::DuplicateSquare(_) => FindingKind::DuplicateSquare,
            Finding::BrokenInvolution(_) => FindingKind::BrokenInvolution,
            Finding::CubeInconsistency { .. } => FindingKind::CubeInconsistency,
        }
    }

    pub fn describe(&self, sk: &Skeleton) -> String {
        let n = |e: EdgeId| sk.edge_name(e).to_owned();
        match self {
            Finding::MissingSquare((e, f)) => format!("missing square for {} {}", n(*e), n(*f)),
            Finding::DuplicateSquare((e, f)) => format!("more than one square with left side {} {}", n(*e), n(*f)),
            Finding::BrokenInvolution(sq) => format!("square {} is not part of an involution", sq.display(sk)),
            Finding::CubeInconsistency { triple, first, second } => {
                let w = |t: &[EdgeId; 3]| t.iter().map(|e| n(*e)).collect::<Vec<_>>().join(" ");
                format!("inconsistent cube at {}: {} vs {}", w(triple), w(first), w(second))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn kinds(&self) -> BTreeSet<FindingKind> {
        self.failures.iter().map(Finding::kind).collect()
    }
}

/// A skeleton with shape-checked square relations, not necessarily a k-graph.
#[derive(Clone, Debug)]
pub struct SquareSystem {
    skeleton: Skeleton,
    squares: Vec<Square>,
    partners: HashMap<EdgePair, Vec<EdgePair>>,
}

impl SquareSystem {
    pub fn new(skeleton: Skeleton, squares: Vec<Square>) -> Result<Self> {
        let mut partners: HashMap<EdgePair, Vec<EdgePair>> = HashMap::new();
        for sq in &squares {
            sq.check(&skeleton)?;
            for (from, to) in [(sq.lhs, sq.rhs), (sq.rhs, sq.lhs)] {
                let list = partners.entry(from).or_default();
                if !list.contains(&to) {
                    list.push(to);
                }
            }
        }
        for list in partners.values_mut() {
            list.sort();
        }
        Ok(SquareSystem {
            skeleton,
            squares,
            partners,
        })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn rank(&self) -> usize {
        self.skeleton.rank()
    }

    /// Every `gh` related to `ef` by some square, in either orientation.
    pub fn partners(&self, pair: EdgePair) -> &[EdgePair] {
        self.partners.get(&pair).map_or(&[], Vec::as_slice)
    }

    /// Whether the two edges occur together in some square.
    pub fn share_square(&self, a: EdgeId, b: EdgeId) -> bool {
        self.squares.iter().any(|sq| {
            let es = [sq.lhs.0, sq.lhs.1, sq.rhs.0, sq.rhs.1];
            es.contains(&a) && es.contains(&b)
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let sk = &self.skeleton;
        let mut failures = Vec::new();

        let mut lhs_count: HashMap<EdgePair, usize> = HashMap::new();
        for sq in &self.squares {
            *lhs_count.entry(sq.lhs).or_default() += 1;
        }
        let mut dups: Vec<EdgePair> = lhs_count.into_iter().filter(|(_, n)| *n > 1).map(|(p, _)| p).collect();
        dups.sort();
        failures.extend(dups.into_iter().map(Finding::DuplicateSquare));

        let mut broken = BTreeSet::new();
        for sq in &self.squares {
            let lhs_ok = self.partners(sq.lhs) == [sq.rhs];
            let rhs_ok = self.partners(sq.rhs) == [sq.lhs];
            if !(lhs_ok && rhs_ok) {
                broken.insert(*sq);
            }
        }
        failures.extend(broken.into_iter().map(Finding::BrokenInvolution));

        for i in 1..=sk.rank() {
            for j in 1..=sk.rank() {
                if i == j {
                    continue;
                }
                for pair in sk.composable_orthogonal_pairs(i, j).expect("colors in range") {
                    if self.partners(pair).is_empty() {
                        failures.push(Finding::MissingSquare(pair));
                    }
                }
            }
        }

        // Cube consistency only makes sense once swapping is a total function.
        if failures.is_empty() && sk.rank() >= 3 {
            failures.extend(self.cube_failures());
        }
        ValidationReport { failures }
    }

    fn cube_failures(&self) -> Vec<Finding> {
        let sk = &self.skeleton;
        let swap = |w: &mut [EdgeId; 3], at: usize| {
            let (g, h) = self.partners((w[at], w[at + 1]))[0];
            w[at] = g;
            w[at + 1] = h;
        };
        let mut out = Vec::new();
        for mid in sk.edges_sorted() {
            let em = sk.edge(mid);
            for left in sk.edges_sorted() {
                let el = sk.edge(left);
                if el.source != em.range || el.color == em.color {
                    continue;
                }
                for right in sk.edges_sorted() {
                    let er = sk.edge(right);
                    if er.range != em.source || er.color == em.color || er.color == el.color {
                        continue;
                    }
                    let triple = [left, mid, right];
                    let mut first = triple;
                    for at in [0, 1, 0] {
                        swap(&mut first, at);
                    }
                    let mut second = triple;
                    for at in [1, 0, 1] {
                        swap(&mut second, at);
                    }
                    if first != second {
                        out.push(Finding::CubeInconsistency { triple, first, second });
                    }
                }
            }
        }
        out
    }
}

/// Runs every factorization check on a skeleton and square set.
pub fn validate(skeleton: &Skeleton, squares: &[Square]) -> Result<ValidationReport> {
    Ok(SquareSystem::new(skeleton.clone(), squares.to_vec())?.validate())
}

/// The canonical representative of an element of a k-graph: its edge path
/// with colors in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    edges: Vec<EdgeId>,
}

impl NormalForm {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// The color-`color` edges, in composition order.
    pub fn block(&self, color: Color) -> &[EdgeId] {
        let start: u32 = self.degree.coords()[..color - 1].iter().sum();
        let end = start + self.degree.get(color);
        &self.edges[start as usize..end as usize]
    }

    pub fn path(&self) -> EdgePath {
        EdgePath::from_parts(self.range, self.source, self.edges.clone())
    }

    pub fn display<'a>(&'a self, sk: &'a Skeleton) -> impl fmt::Display + 'a {
        DisplayNormalForm { nf: self, sk }
    }

    /// Sort key: edge names in order, then endpoints.
    pub fn name_key<'a>(&self, sk: &'a Skeleton) -> (Vec<&'a str>, &'a str, &'a str) {
        (
            self.edges.iter().map(|e| sk.edge_name(*e)).collect(),
            sk.vertex_name(self.range),
            sk.vertex_name(self.source),
        )
    }
}

struct DisplayNormalForm<'a> {
    nf: &'a NormalForm,
    sk: &'a Skeleton,
}

impl fmt::Display for DisplayNormalForm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.nf.path().display(self.sk).fmt(f)
    }
}

/// A validated k-graph.
#[derive(Clone, Debug)]
pub struct KGraph {
    system: SquareSystem,
}

impl Deref for KGraph {
    type Target = SquareSystem;

    fn deref(&self) -> &SquareSystem {
        &self.system
    }
}

impl KGraph {
    pub fn new(skeleton: Skeleton, squares: Vec<Square>) -> Result<Self> {
        Self::from_system(SquareSystem::new(skeleton, squares)?)
    }

    pub fn from_system(system: SquareSystem) -> Result<Self> {
        let report = system.validate();
        if !report.is_ok() {
            return Err(Error::Invalid(Box::new(report)));
        }
        Ok(KGraph { system })
    }

    pub fn system(&self) -> &SquareSystem {
        &self.system
    }

    /// The unique `(g, h)` with `ef = gh`.
    pub fn swap(&self, e: EdgeId, f: EdgeId) -> Result<EdgePair> {
        let sk = self.skeleton();
        if sk.color(e) == sk.color(f) {
            return Err(Error::NotOrthogonal(sk.edge_name(e).into(), sk.edge_name(f).into()));
        }
        if sk.edge(e).source != sk.edge(f).range {
            return Err(Error::NotComposable(format!(
                "s({}) != r({})",
                sk.edge_name(e),
                sk.edge_name(f)
            )));
        }
        Ok(self.swap_unchecked(e, f))
    }

    fn swap_unchecked(&self, e: EdgeId, f: EdgeId) -> EdgePair {
        self.partners((e, f))[0]
    }

    pub fn identity(&self, v: VertexId) -> NormalForm {
        NormalForm {
            range: v,
            source: v,
            degree: Degree::zero(self.rank()),
            edges: Vec::new(),
        }
    }

    /// Bubble the path into ascending color order. Each swap removes one color
    /// inversion, so this terminates.
    pub fn normalize(&self, p: &EdgePath) -> NormalForm {
        let mut edges = p.edges().to_vec();
        self.sort_colors(&mut edges, |c| c);
        NormalForm {
            range: p.range(),
            source: p.source(),
            degree: p.degree(self.skeleton()),
            edges,
        }
    }

    /// Adjacent-swap sort of `edges` by `key(color)`. Only edges of different
    /// colors are ever exchanged.
    fn sort_colors(&self, edges: &mut [EdgeId], key: impl Fn(Color) -> usize) {
        let sk = self.skeleton();
        loop {
            let mut changed = false;
            for i in 0..edges.len().saturating_sub(1) {
                if key(sk.color(edges[i])) > key(sk.color(edges[i + 1])) {
                    let (g, h) = self.swap_unchecked(edges[i], edges[i + 1]);
                    edges[i] = g;
                    edges[i + 1] = h;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// `lambda ∘ mu`.
    pub fn compose(&self, lambda: &NormalForm, mu: &NormalForm) -> Result<NormalForm> {
        let p = lambda.path().compose(&mu.path())?;
        Ok(self.normalize(&p))
    }

    /// The unique `(beta, gamma)` with `d(beta) = m` and `beta gamma = lambda`.
    pub fn factorize(&self, lambda: &NormalForm, m: &Degree) -> Result<(NormalForm, NormalForm)> {
        if m.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: m.rank(),
            });
        }
        let rest = lambda.degree.checked_sub(m).ok_or(Error::DegreeTooLarge)?;
        let sk = self.skeleton();

        // Target color layout: m's colors first, then the remainder's.
        let target: Vec<Color> = (1..=self.rank())
            .flat_map(|c| std::iter::repeat_n(c, m.get(c) as usize))
            .chain((1..=self.rank()).flat_map(|c| std::iter::repeat_n(c, rest.get(c) as usize)))
            .collect();
        let mut edges = lambda.edges.clone();
        for i in 0..edges.len() {
            if sk.color(edges[i]) == target[i] {
                continue;
            }
            let j = (i + 1..edges.len())
                .find(|&j| sk.color(edges[j]) == target[i])
                .expect("color counts agree");
            for k in (i..j).rev() {
                let (g, h) = self.swap_unchecked(edges[k], edges[k + 1]);
                edges[k] = g;
                edges[k + 1] = h;
            }
        }

        let split = m.total() as usize;
        let (head, tail) = edges.split_at(split);
        let mid = match head.last() {
            Some(e) => sk.edge(*e).source,
            None => lambda.range,
        };
        let beta = self.normalize(&EdgePath::from_parts(lambda.range, mid, head.to_vec()));
        let gamma = self.normalize(&EdgePath::from_parts(mid, lambda.source, tail.to_vec()));
        Ok((beta, gamma))
    }

    /// All elements of `u Λ^n v` (range `u`, source `v`), sorted by edge names.
    pub fn hom(&self, u: VertexId, v: VertexId, n: &Degree) -> Result<Vec<NormalForm>> {
        Ok(self.rooted_at(u, n)?.into_iter().filter(|nf| nf.source == v).collect())
    }

    /// All elements of degree `n` with range `u`, sorted by edge names.
    fn rooted_at(&self, u: VertexId, n: &Degree) -> Result<Vec<NormalForm>> {
        if n.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: n.rank(),
            });
        }
        let sk = self.skeleton();
        let colors: Vec<Color> = (1..=self.rank())
            .flat_map(|c| std::iter::repeat_n(c, n.get(c) as usize))
            .collect();
        // incoming[(vertex, color)] = edges with that range and color, by name
        let mut incoming: HashMap<(VertexId, Color), Vec<EdgeId>> = HashMap::new();
        for (id, e) in sk.edges() {
            incoming.entry((e.range, e.color)).or_default().push(id);
        }
        for list in incoming.values_mut() {
            list.sort_by_key(|e| sk.edge_name(*e));
        }

        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(colors.len());
        fn walk(
            colors: &[Color],
            at: VertexId,
            incoming: &HashMap<(VertexId, Color), Vec<EdgeId>>,
            sk: &Skeleton,
            stack: &mut Vec<EdgeId>,
            emit: &mut dyn FnMut(&[EdgeId], VertexId),
        ) {
            let Some((&c, rest)) = colors.split_first() else {
                emit(stack, at);
                return;
            };
            if let Some(list) = incoming.get(&(at, c)) {
                for &e in list {
                    stack.push(e);
                    walk(rest, sk.edge(e).source, incoming, sk, stack, emit);
                    stack.pop();
                }
            }
        }
        walk(&colors, u, &incoming, sk, &mut stack, &mut |edges, source| {
            out.push(NormalForm {
                range: u,
                source,
                degree: n.clone(),
                edges: edges.to_vec(),
            })
        });
        Ok(out)
    }

    /// Every element with degree `<= bound`, each exactly once; ordered by
    /// total degree, then degree, then range vertex, then edge names.
    pub fn elements_up_to(&self, bound: &Degree) -> Result<impl Iterator<Item = NormalForm> + '_> {
        if bound.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: bound.rank(),
            });
        }
        let mut degrees = bound.below();
        degrees.sort_by(|a, b| (a.total(), a.coords()).cmp(&(b.total(), b.coords())));
        let vertices: Vec<VertexId> = self.skeleton().vertices().collect();
        Ok(degrees.into_iter().flat_map(move |n| {
            vertices
                .clone()
                .into_iter()
                .flat_map(move |u| self.rooted_at(u, &n).expect("rank checked"))
        }))
    }

    /// The rank-1 k-graph on the color-`color` edges.
    pub fn component_1graph(&self, color: Color) -> Result<KGraph> {
        let sk = self.skeleton();
        if color == 0 || color > sk.rank() {
            return Err(Error::BadColor { color, rank: sk.rank() });
        }
        let mut out = Skeleton::new(1)?;
        for v in sk.vertices() {
            out.add_vertex(sk.vertex_name(v))?;
        }
        for (_, e) in sk.edges().filter(|(_, e)| e.color == color) {
            out.add_edge(&e.name, sk.vertex_name(e.range), sk.vertex_name(e.source), 1)?;
        }
        KGraph::new(out, Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::{HashSet, VecDeque};

    fn kg(f: (Skeleton, Vec<Square>)) -> KGraph {
        KGraph::new(f.0, f.1).unwrap()
    }

    fn names(sk: &Skeleton, edges: &[EdgeId]) -> Vec<String> {
        edges.iter().map(|e| sk.edge_name(*e).to_owned()).collect()
    }

    /// All positive words reachable from `p` by single square moves.
    fn move_closure(g: &KGraph, p: &[EdgeId]) -> HashSet<Vec<EdgeId>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([p.to_vec()]);
        seen.insert(p.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                for &(g2, h2) in g.partners((w[i], w[i + 1])) {
                    let mut n = w.clone();
                    n[i] = g2;
                    n[i + 1] = h2;
                    if seen.insert(n.clone()) {
                        queue.push_back(n);
                    }
                }
            }
        }
        seen
    }

    fn all_paths(sk: &Skeleton, max_len: usize) -> Vec<EdgePath> {
        let mut out: Vec<EdgePath> = sk.vertices().map(EdgePath::vertex).collect();
        let mut layer: Vec<Vec<EdgeId>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &layer {
                for (e, _) in sk.edges() {
                    let mut q = p.clone();
                    q.push(e);
                    if let Ok(path) = EdgePath::from_edges(sk, q.clone()) {
                        out.push(path);
                        next.push(q);
                    }
                }
            }
            layer = next;
        }
        out
    }

    #[test]
    fn single_vertex_is_a_2_graph() {
        let (sk, sq) = fixtures::single_vertex();
        assert!(validate(&sk, &sq).unwrap().is_ok());
        let (sk, sq) = fixtures::single_vertex_swapped();
        assert!(validate(&sk, &sq).unwrap().is_ok());
    }

    #[test]
    fn deleting_a_square_is_reported() {
        let (sk, mut sq) = fixtures::single_vertex();
        let b = sk.edge_id("b").unwrap();
        let d = sk.edge_id("d").unwrap();
        sq.retain(|s| s.lhs != (b, d));
        let report = validate(&sk, &sq).unwrap();
        assert!(!report.is_ok());
        assert!(report.failures.contains(&Finding::MissingSquare((b, d))));
        let e = sk.edge_id("e").unwrap();
        let c = sk.edge_id("c").unwrap();
        assert!(report.failures.contains(&Finding::MissingSquare((e, c))));
    }

    #[test]
    fn redirected_square_breaks_involution() {
        let (sk, mut sq) = fixtures::single_vertex();
        let id = |n| sk.edge_id(n).unwrap();
        // ad = da becomes ad = ea, colliding with cd = ea.
        let i = sq.iter().position(|s| s.lhs == (id("a"), id("d"))).unwrap();
        sq[i].rhs = (id("e"), id("a"));
        let report = validate(&sk, &sq).unwrap();
        let kinds = report.kinds();
        assert!(kinds.contains(&FindingKind::BrokenInvolution));
        assert!(report.failures.contains(&Finding::MissingSquare((id("d"), id("a")))));
    }

    #[test]
    fn duplicate_left_side() {
        let (sk, mut sq) = fixtures::torus();
        sq.push(sq[0]);
        let report = validate(&sk, &sq).unwrap();
        assert_eq!(report.kinds(), BTreeSet::from([FindingKind::DuplicateSquare]));
    }

    #[test]
    fn malformed_squares_are_errors() {
        let (mut sk, _) = fixtures::torus();
        let f = sk.edge_id("f").unwrap();
        let g = sk.edge_id("g").unwrap();
        let same = Square::new(f, f, f, f);
        assert!(matches!(validate(&sk, &[same]), Err(Error::MalformedSquare { .. })));
        sk.add_vertex("w").unwrap();
        let x = sk.add_edge("x", "w", "v", 1).unwrap();
        let sq = Square::new(x, g, g, f);
        assert!(matches!(validate(&sk, &[sq]), Err(Error::MalformedSquare { .. })));
    }

    #[test]
    fn commuting_rank_3_cubes_are_consistent() {
        let (sk, sq) = fixtures::rank3_commuting();
        assert!(validate(&sk, &sq).unwrap().is_ok());
        let g = kg((sk, sq));
        let sk = g.skeleton();
        let p = sk.path(&["z", "y", "x"]).unwrap();
        assert_eq!(names(sk, g.normalize(&p).edges()), ["x", "y", "z"]);
    }

    #[test]
    fn inconsistent_cubes_are_reported() {
        let (sk, sq) = fixtures::cube_inconsistent();
        let report = validate(&sk, &sq).unwrap();
        assert_eq!(report.kinds(), BTreeSet::from([FindingKind::CubeInconsistency]));
    }

    #[test]
    fn swap_in_single_vertex() {
        let g = kg(fixtures::single_vertex());
        let sk = g.skeleton();
        let id = |n| sk.edge_id(n).unwrap();
        assert_eq!(g.swap(id("a"), id("d")).unwrap(), (id("d"), id("a")));
        assert_eq!(g.swap(id("c"), id("d")).unwrap(), (id("e"), id("a")));
        assert_eq!(g.swap(id("e"), id("a")).unwrap(), (id("c"), id("d")));
        assert!(matches!(g.swap(id("a"), id("b")), Err(Error::NotOrthogonal(..))));

        let t = kg(fixtures::torus());
        let sk = t.skeleton();
        let (f, gg) = (sk.edge_id("f").unwrap(), sk.edge_id("g").unwrap());
        assert_eq!(t.swap(f, gg).unwrap(), (gg, f));
    }

    #[test]
    fn swap_rejects_non_composable() {
        let mut s = Skeleton::new(2).unwrap();
        s.add_vertex("u").unwrap();
        s.add_vertex("w").unwrap();
        let x = s.add_edge("x", "u", "w", 1).unwrap();
        let y = s.add_edge("y", "u", "w", 2).unwrap();
        let k = KGraph::new(s, vec![]).unwrap();
        assert!(matches!(k.swap(x, y), Err(Error::NotComposable(_))));
    }

    #[test]
    fn normalize_identifies_factorizations() {
        for fixture in [fixtures::single_vertex(), fixtures::single_vertex_swapped()] {
            let g = kg(fixture);
            let sk = g.skeleton();
            let ae = g.normalize(&sk.path(&["a", "e"]).unwrap());
            let dc = g.normalize(&sk.path(&["d", "c"]).unwrap());
            assert_eq!(ae, dc);
            let ad = g.normalize(&sk.path(&["a", "d"]).unwrap());
            assert_ne!(ad, ae);
        }
    }

    #[test]
    fn normalize_identity() {
        let g = kg(fixtures::single_vertex());
        let v = g.skeleton().vertex("v").unwrap();
        let nf = g.normalize(&EdgePath::vertex(v));
        assert_eq!(nf, g.identity(v));
        assert!(nf.degree().is_zero());
        assert!(nf.block(1).is_empty() && nf.block(2).is_empty());
    }

    #[test]
    fn normal_form_blocks() {
        let g = kg(fixtures::single_vertex());
        let sk = g.skeleton();
        let nf = g.normalize(&sk.path(&["a", "b", "d"]).unwrap());
        assert_eq!(nf.block(1).len(), 1);
        assert_eq!(nf.block(2).len(), 2);
        assert!(nf.block(1).iter().all(|e| sk.color(*e) == 1));
        assert!(nf.block(2).iter().all(|e| sk.color(*e) == 2));
    }

    // normalize(p) = normalize(q) iff q is reachable from p by square moves.
    #[test]
    fn normalize_matches_move_closure() {
        for fixture in [
            fixtures::single_vertex(),
            fixtures::single_vertex_swapped(),
            fixtures::product(),
        ] {
            let g = kg(fixture);
            let paths = all_paths(g.skeleton(), 3);
            for p in &paths {
                let closure = move_closure(&g, p.edges());
                for q in &paths {
                    if q.len() != p.len() || q.range() != p.range() || q.source() != p.source() {
                        continue;
                    }
                    let same = g.normalize(p) == g.normalize(q);
                    assert_eq!(same, closure.contains(q.edges()), "{:?} {:?}", p, q);
                }
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_and_move_invariant() {
        let g = kg(fixtures::single_vertex());
        for p in all_paths(g.skeleton(), 4) {
            let nf = g.normalize(&p);
            assert_eq!(g.normalize(&nf.path()), nf);
            let w = p.edges();
            for i in 0..w.len().saturating_sub(1) {
                for &(x, y) in g.partners((w[i], w[i + 1])) {
                    let mut q = w.to_vec();
                    q[i] = x;
                    q[i + 1] = y;
                    let q = EdgePath::from_edges(g.skeleton(), q).unwrap();
                    assert_eq!(g.normalize(&q), nf);
                }
            }
        }
    }

    #[test]
    fn rank_one_normalize_is_identity() {
        let g = kg(fixtures::bouquet(3));
        for p in all_paths(g.skeleton(), 3) {
            assert_eq!(g.normalize(&p).edges(), p.edges());
        }
    }

    #[test]
    fn compose_is_unital_and_associative() {
        let g = kg(fixtures::single_vertex());
        let sk = g.skeleton();
        let v = sk.vertex("v").unwrap();
        let small: Vec<NormalForm> = g.elements_up_to(&Degree::new(vec![1, 1])).unwrap().collect();
        for x in &small {
            assert_eq!(&g.compose(&g.identity(v), x).unwrap(), x);
            assert_eq!(&g.compose(x, &g.identity(v)).unwrap(), x);
        }
        for x in &small {
            for y in &small {
                for z in &small {
                    let l = g.compose(&g.compose(x, y).unwrap(), z).unwrap();
                    let r = g.compose(x, &g.compose(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        let a = g.normalize(&sk.path(&["a"]).unwrap());
        let d = g.normalize(&sk.path(&["d"]).unwrap());
        assert_eq!(g.compose(&a, &d).unwrap(), g.normalize(&sk.path(&["a", "d"]).unwrap()));
    }

    #[test]
    fn factorize_edge_cases() {
        let g = kg(fixtures::single_vertex());
        let sk = g.skeleton();
        let lambda = g.normalize(&sk.path(&["a", "b", "d"]).unwrap());
        let (b, c) = g.factorize(&lambda, &Degree::zero(2)).unwrap();
        assert_eq!(b, g.identity(lambda.range()));
        assert_eq!(c, lambda);
        let (b, c) = g.factorize(&lambda, lambda.degree()).unwrap();
        assert_eq!(b, lambda);
        assert_eq!(c, g.identity(lambda.source()));
        assert_eq!(
            g.factorize(&lambda, &Degree::new(vec![2, 0])),
            Err(Error::DegreeTooLarge)
        );
    }

    // Split every representative of the class of `ad` and compare.
    #[test]
    fn factorize_against_representatives() {
        let g = kg(fixtures::single_vertex());
        let sk = g.skeleton();
        let lambda = g.normalize(&sk.path(&["a", "d"]).unwrap());
        for m in [Degree::new(vec![1, 0]), Degree::new(vec![0, 1])] {
            let (beta, gamma) = g.factorize(&lambda, &m).unwrap();
            assert_eq!(beta.degree(), &m);
            assert_eq!(g.compose(&beta, &gamma).unwrap(), lambda);
            let reps = move_closure(&g, lambda.edges());
            assert!(reps.len() <= 2);
            let mut found = 0;
            for r in reps {
                let head = EdgePath::from_edges(sk, r[..1].to_vec()).unwrap();
                if head.degree(sk) == m {
                    found += 1;
                    assert_eq!(g.normalize(&head), beta);
                }
            }
            assert_eq!(found, 1);
        }
        // with {d, e} of color 1 the (1,0) factor of ad's class is d
        let (beta, _) = g.factorize(&lambda, &Degree::new(vec![1, 0])).unwrap();
        assert_eq!(names(sk, beta.edges()), ["d"]);
    }

    #[test]
    fn hom_counts_single_vertex() {
        let g = kg(fixtures::single_vertex());
        let v = g.skeleton().vertex("v").unwrap();
        let count = |n: Vec<u32>| g.hom(v, v, &Degree::new(n)).unwrap().len();
        assert_eq!(count(vec![1, 0]), 2);
        assert_eq!(count(vec![0, 1]), 3);
        assert_eq!(count(vec![1, 1]), 6);
        assert_eq!(count(vec![0, 0]), 1);
        assert_eq!(g.hom(v, v, &Degree::zero(2)).unwrap(), vec![g.identity(v)]);
    }

    // brute force: enumerate paths of the right degree and dedupe by normalize
    #[test]
    fn hom_matches_path_enumeration() {
        let g = kg(fixtures::single_vertex());
        let v = g.skeleton().vertex("v").unwrap();
        let paths = all_paths(g.skeleton(), 2);
        for n in Degree::new(vec![1, 1]).below() {
            let oracle: HashSet<NormalForm> = paths
                .iter()
                .filter(|p| p.degree(g.skeleton()) == n)
                .map(|p| g.normalize(p))
                .collect();
            let got = g.hom(v, v, &n).unwrap();
            assert_eq!(got.len(), oracle.len());
            assert!(got.iter().all(|x| oracle.contains(x)));
        }
    }

    #[test]
    fn hom_with_zero_degree_between_distinct_vertices() {
        let (sk, _) = fixtures::four_vertex();
        let mut s = Skeleton::new(2).unwrap();
        for v in sk.vertices() {
            s.add_vertex(sk.vertex_name(v)).unwrap();
        }
        let g = KGraph::new(s, vec![]).unwrap();
        let vs: Vec<VertexId> = g.skeleton().vertices().collect();
        assert!(g.hom(vs[0], vs[1], &Degree::zero(2)).unwrap().is_empty());
        assert_eq!(g.hom(vs[1], vs[1], &Degree::zero(2)).unwrap().len(), 1);
    }

    #[test]
    fn hom_is_sorted_by_names() {
        let g = kg(fixtures::single_vertex_swapped());
        let sk = g.skeleton();
        let v = sk.vertex("v").unwrap();
        let got: Vec<String> = g
            .hom(v, v, &Degree::new(vec![1, 1]))
            .unwrap()
            .iter()
            .map(|nf| nf.display(sk).to_string())
            .collect();
        assert_eq!(got, ["a d", "a e", "b d", "b e", "c d", "c e"]);
    }

    #[test]
    fn elements_up_to_counts() {
        let g = kg(fixtures::single_vertex());
        let all: Vec<NormalForm> = g.elements_up_to(&Degree::new(vec![1, 1])).unwrap().collect();
        assert_eq!(all.len(), 12);
        let set: HashSet<&NormalForm> = all.iter().collect();
        assert_eq!(set.len(), 12);
        let zero: Vec<NormalForm> = g.elements_up_to(&Degree::zero(2)).unwrap().collect();
        assert_eq!(zero.len(), g.skeleton().vertex_count());
        assert!(zero.iter().all(NormalForm::is_vertex));
    }

    #[test]
    fn elements_are_distinct_after_renormalizing() {
        let g = kg(fixtures::product());
        let all: Vec<NormalForm> = g.elements_up_to(&Degree::new(vec![2, 2])).unwrap().collect();
        let renormalized: HashSet<NormalForm> = all.iter().map(|x| g.normalize(&x.path())).collect();
        assert_eq!(renormalized.len(), all.len());
    }

    #[test]
    fn component_graphs() {
        let g = kg(fixtures::single_vertex());
        let c1 = g.component_1graph(1).unwrap();
        let c2 = g.component_1graph(2).unwrap();
        assert_eq!(c1.skeleton().edge_count(), 2);
        assert_eq!(c2.skeleton().edge_count(), 3);
        assert_eq!(c1.rank(), 1);
        assert!(c1.validate().is_ok() && c2.squares().is_empty());
        assert!(matches!(g.component_1graph(3), Err(Error::BadColor { .. })));

        let t = kg(fixtures::torus());
        let loop1 = t.component_1graph(1).unwrap();
        assert_eq!(loop1.skeleton().edge_count(), 1);
    }
}
