//! Fundamental groups `π(Λ, v)`: presentations from a spanning tree, Tietze
//! simplification, and abelian invariants.
//!
//! The group at `v` is generated by the edges outside a spanning tree of the
//! component of `v`, with one relator `e f h⁻¹ g⁻¹` per square `ef = gh`
//! (tree edges deleted).

mod snf;
mod tietze;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groupoid::{GWord, SignedEdge};
use crate::kgraph::SquareSystem;
use crate::skeleton::{EdgeId, VertexId};

pub use snf::{smith_normal_form, AbelianInvariants, IntMatrix, RowLattice, SmithForm};
pub use tietze::tietze_simplify;

/// A BFS spanning tree of one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    base: VertexId,
    order: Vec<VertexId>,
    edges: BTreeSet<EdgeId>,
    /// For each vertex `v`, a tree word with range `v` and source `base`.
    paths: HashMap<VertexId, Vec<SignedEdge>>,
}

/// Builds the BFS tree from `base`, scanning edges in (color, name) order.
pub fn spanning_tree(sys: &SquareSystem, base: VertexId) -> Result<SpanningTree> {
    let sk = sys.skeleton();
    if base.index() >= sk.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", base.index())));
    }
    let sorted = sk.edges_sorted();
    let mut paths = HashMap::from([(base, Vec::new())]);
    let mut order = vec![base];
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &id in &sorted {
            let e = sk.edge(id);
            // step from u to the other end; the word for x is (step) · path(u)
            let (x, step) = if e.range == u {
                (e.source, SignedEdge::neg(id))
            } else if e.source == u {
                (e.range, SignedEdge::pos(id))
            } else {
                continue;
            };
            if paths.contains_key(&x) {
                continue;
            }
            let mut p = vec![step];
            p.extend_from_slice(&paths[&u]);
            paths.insert(x, p);
            edges.insert(id);
            order.push(x);
            queue.push_back(x);
        }
    }
    Ok(SpanningTree {
        base,
        order,
        edges,
        paths,
    })
}

impl SpanningTree {
    pub fn base(&self) -> VertexId {
        self.base
    }

    /// Vertices of the component in BFS order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.order
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.paths.contains_key(&v)
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// The tree word from the base to `v` (range `v`, source base).
    pub fn path(&self, v: VertexId) -> Option<GWord> {
        self.paths.get(&v).map(|p| GWord::from_parts(v, self.base, p.clone()))
    }

    /// `path(r)⁻¹ · w · path(s)`, a loop at the base.
    pub fn to_loop(&self, w: &GWord) -> Option<GWord> {
        let left = self.path(w.range())?.inverse();
        let right = self.path(w.source())?;
        let l = left.compose(w).ok()?;
        l.compose(&right).ok()
    }
}

/// A generator or its inverse, by index into [`GroupPresentation::generators`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: usize,
    pub inverse: bool,
}

impl GenLetter {
    pub fn inv(self) -> Self {
        GenLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A finite group presentation `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<GenLetter>>,
}

impl GroupPresentation {
    /// Rows are relators, columns generators, entries exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![0; self.generators.len()];
                for l in r {
                    row[l.gen] += if l.inverse { -1 } else { 1 };
                }
                row
            })
            .collect();
        IntMatrix::from_rows(self.generators.len(), &rows)
    }

    pub fn relator_text(&self, r: &[GenLetter]) -> String {
        if r.is_empty() {
            return "1".to_owned();
        }
        let tokens: Vec<String> = r
            .iter()
            .map(|l| {
                let name = &self.generators[l.gen];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect();
        tokens.join(" ")
    }

    /// Whether this is `⟨x, y | x y x⁻¹ y⁻¹⟩` up to naming and cyclic form.
    pub fn is_commutator_presentation(&self) -> bool {
        if self.generators.len() != 2 || self.relators.len() != 1 {
            return false;
        }
        let r = &self.relators[0];
        r.len() == 4 && r[0].gen != r[1].gen && r[2] == r[0].inv() && r[3] == r[1].inv()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        f.write_str(&self.generators.join(", "))?;
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            f.write_str(&self.relator_text(r))?;
        }
        f.write_str(" >")
    }
}

impl FromStr for GroupPresentation {
    type Err = Error;

    /// Parses `< a, b | a b a^-1 b^-1, ... >`; `1` is the empty relator.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadToken(s.trim().to_owned());
        let inner = s
            .trim()
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(bad)?;
        let (gens, rels) = inner.split_once('|').ok_or_else(bad)?;
        let generators: Vec<String> = gens
            .split(',')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(str::to_owned)
            .collect();
        let mut seen = BTreeSet::new();
        for g in &generators {
            if g.contains(char::is_whitespace) || g.contains('^') {
                return Err(Error::BadToken(g.clone()));
            }
            if !seen.insert(g) {
                return Err(Error::DuplicateName(g.clone()));
            }
        }
        let index: HashMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut relators = Vec::new();
        if !rels.trim().is_empty() {
            for r in rels.split(',') {
                let mut word = Vec::new();
                for tok in r.split_whitespace() {
                    if tok == "1" {
                        continue;
                    }
                    let (name, inverse) = match tok.strip_suffix("^-1") {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    let gen = *index.get(name).ok_or_else(|| Error::BadToken(tok.to_owned()))?;
                    word.push(GenLetter { gen, inverse });
                }
                relators.push(word);
            }
        }
        Ok(GroupPresentation { generators, relators })
    }
}

/// Generators of `π` at `tree.base()`: edges outside the tree whose ends lie
/// in the component, sorted by name.
fn generator_edges(sys: &SquareSystem, tree: &SpanningTree) -> Vec<EdgeId> {
    let sk = sys.skeleton();
    let mut gens: Vec<EdgeId> = sk
        .edges()
        .filter(|(id, e)| tree.contains(e.range) && !tree.is_tree_edge(*id))
        .map(|(id, _)| id)
        .collect();
    gens.sort_by(|a, b| sk.edge_name(*a).cmp(sk.edge_name(*b)));
    gens
}

fn presentation_with(sys: &SquareSystem, tree: &SpanningTree) -> (GroupPresentation, HashMap<EdgeId, usize>) {
    let sk = sys.skeleton();
    let gens = generator_edges(sys, tree);
    let index: HashMap<EdgeId, usize> = gens.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let letter = |e: EdgeId, inverse: bool| index.get(&e).map(|&gen| GenLetter { gen, inverse });
    let mut relators = Vec::new();
    for sq in sys.squares() {
        let (e, f) = sq.lhs;
        let (g, h) = sq.rhs;
        if !tree.contains(sk.edge(e).range) {
            continue;
        }
        let word: Vec<GenLetter> = [letter(e, false), letter(f, false), letter(h, true), letter(g, true)]
            .into_iter()
            .flatten()
            .collect();
        let mut reduced: Vec<GenLetter> = Vec::new();
        for l in word {
            if reduced.last() == Some(&l.inv()) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        relators.push(reduced);
    }
    let presentation = GroupPresentation {
        generators: gens.iter().map(|&e| sk.edge_name(e).to_owned()).collect(),
        relators,
    };
    (presentation, index)
}

/// The presentation of `π(Λ, base)` from the BFS spanning tree at `base`.
pub fn group_presentation(sys: &SquareSystem, base: VertexId) -> Result<GroupPresentation> {
    let tree = spanning_tree(sys, base)?;
    Ok(presentation_with(sys, &tree).0)
}

pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    AbelianInvariants::of_relations(&p.exponent_matrix())
}

/// Exponent sums of the non-tree edges of `w`, indexed like the generators
/// of [`group_presentation`]. Tree edges collapse, so this is also the image
/// of the base loop `tree.to_loop(w)`. `None` if `w` leaves the component.
pub fn abelian_image(sys: &SquareSystem, tree: &SpanningTree, w: &GWord) -> Option<Vec<i64>> {
    if !tree.contains(w.range()) {
        return None;
    }
    let gens = generator_edges(sys, tree);
    let index: HashMap<EdgeId, usize> = gens.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    Some(image_with(&index, gens.len(), w))
}

fn image_with(index: &HashMap<EdgeId, usize>, n: usize, w: &GWord) -> Vec<i64> {
    let mut v = vec![0; n];
    for l in w.letters() {
        if let Some(&i) = index.get(&l.edge) {
            v[i] += if l.inverse { -1 } else { 1 };
        }
    }
    v
}

/// Separates parallel words whose abelian images differ modulo the relator
/// lattice of one component.
#[derive(Clone, Debug)]
pub struct AbelianSeparator {
    tree: SpanningTree,
    index: HashMap<EdgeId, usize>,
    lattice: RowLattice,
}

impl AbelianSeparator {
    pub fn new(sys: &SquareSystem, base: VertexId) -> Result<Self> {
        let tree = spanning_tree(sys, base)?;
        let (p, index) = presentation_with(sys, &tree);
        let lattice = RowLattice::new(&p.exponent_matrix());
        Ok(AbelianSeparator { tree, index, lattice })
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn image(&self, w: &GWord) -> Vec<i64> {
        image_with(&self.index, self.lattice.dim(), w)
    }

    /// True when `w1` and `w2` (same endpoints, in this component) are
    /// provably different in the groupoid.
    pub fn separates(&self, w1: &GWord, w2: &GWord) -> bool {
        let a = self.image(w1);
        let b = self.image(w2);
        let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        !self.lattice.contains(&diff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_bigint::BigInt;

    fn sys(f: (crate::skeleton::Skeleton, Vec<crate::kgraph::Square>)) -> SquareSystem {
        SquareSystem::new(f.0, f.1).unwrap()
    }

    #[test]
    fn tree_of_single_vertex_is_empty() {
        let s = sys(fixtures::single_vertex());
        let v = s.skeleton().vertex("v").unwrap();
        let t = spanning_tree(&s, v).unwrap();
        assert!(t.edges().is_empty());
        assert_eq!(t.path(v), Some(GWord::empty(v)));
    }

    #[test]
    fn four_vertex_tree() {
        let s = sys(fixtures::four_vertex());
        let sk = s.skeleton();
        let p = sk.vertex("p").unwrap();
        let t = spanning_tree(&s, p).unwrap();
        assert_eq!(t.edges().len(), 3);
        assert_eq!(t, spanning_tree(&s, p).unwrap());
        for &v in t.vertices() {
            let w = t.path(v).unwrap();
            assert_eq!((w.range(), w.source()), (v, p));
            assert!(w.letters().iter().all(|l| t.is_tree_edge(l.edge)));
        }
        // BFS from p in (color, name) order: c reaches r, f reaches q, then g reaches t from r
        let names: Vec<&str> = t.edges().iter().map(|&e| sk.edge_name(e)).collect();
        assert_eq!(names, ["c", "f", "g"]);
        let loop_ = t.to_loop(&GWord::parse(sk, "a", None).unwrap()).unwrap();
        assert_eq!((loop_.range(), loop_.source()), (p, p));
        assert!(spanning_tree(&s, VertexId(99)).is_err());
    }

    #[test]
    fn single_vertex_presentation() {
        let s = sys(fixtures::single_vertex());
        let p = group_presentation(&s, s.skeleton().vertex("v").unwrap()).unwrap();
        assert_eq!(p.generators, ["a", "b", "c", "d", "e"]);
        assert_eq!(p.relators.len(), 6);
        let m = p.exponent_matrix();
        // cd = ea
        let row: Vec<BigInt> = [-1, 0, 1, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(m.row(1), row.as_slice());
        assert_eq!(abelianization(&p).to_string(), "Z^2");
        let t = tietze_simplify(&p);
        assert!(t.is_commutator_presentation(), "{t}");
        assert_eq!(t.to_string(), "< a, d | a d a^-1 d^-1 >");
    }

    #[test]
    fn torus_and_bouquet() {
        let s = sys(fixtures::torus());
        let p = group_presentation(&s, s.skeleton().vertex("v").unwrap()).unwrap();
        assert_eq!(p.to_string(), "< f, g | f g f^-1 g^-1 >");
        let b = sys(fixtures::bouquet(3));
        let p = group_presentation(&b, b.skeleton().vertex("v").unwrap()).unwrap();
        assert_eq!(p.to_string(), "< x1, x2, x3 | >");
        assert_eq!(abelianization(&p).free_rank, 3);
    }

    #[test]
    fn parse_round_trip() {
        for text in ["< a, b | a b a^-1 b^-1 >", "< x | >", "< x | x x, 1 >", "<  | >"] {
            let p: GroupPresentation = text.parse().unwrap();
            let again: GroupPresentation = p.to_string().parse().unwrap();
            assert_eq!(p, again);
        }
        assert!("< a | b >".parse::<GroupPresentation>().is_err());
        assert!("a | b".parse::<GroupPresentation>().is_err());
        assert!("< a, a | >".parse::<GroupPresentation>().is_err());
    }

    #[test]
    fn abelian_image_separates() {
        let s = sys(fixtures::single_vertex());
        let sk = s.skeleton();
        let v = sk.vertex("v").unwrap();
        let sep = AbelianSeparator::new(&s, v).unwrap();
        let w = |t: &str| GWord::parse(sk, t, None).unwrap();
        assert_eq!(sep.image(&GWord::empty(v)), vec![0; 5]);
        assert!(!sep.separates(&w("a"), &w("b")));
        assert!(!sep.separates(&w("d"), &w("e")));
        assert!(sep.separates(&w("a"), &w("d")));
        assert!(sep.separates(&w("a a"), &w("a")));
        let tree = spanning_tree(&s, v).unwrap();
        assert_eq!(abelian_image(&s, &tree, &w("a b^-1")), Some(vec![1, -1, 0, 0, 0]));
    }
}
