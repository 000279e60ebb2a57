//! The fundamental groupoid `G(Λ) = P(E⁺)/(C ∪ S)`.
//!
//! Elements are words in edges and formal inverses ([`GWord`]). Free
//! reduction decides the cancellation relations `C`; the square relations
//! `S` are handled by a bounded search ([`equal_in_g`]) that either returns a
//! replayable [`Derivation`], a separating invariant, or gives up.

mod classes;
mod moves;
mod search;

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::kgraph::NormalForm;
use crate::skeleton::{Degree, EdgeId, EdgePath, Skeleton, VertexId};

pub use classes::{
    injectivity_report, lambda_bar_check, Class, ElementClasses, FactorSide, Group, Injectivity, InjectivityReport,
    LambdaBarOutcome, LambdaBarReport, LambdaBarWitness, PairCounts, PairVerdict, UnknownPair,
};
pub use moves::{apply_move, square_moves, square_neighbors, Derivation, Move, ReplayError, Rule, Step};
pub use search::{equal_in_g, Budget, EqualityVerdict, SearchSpent, Witness, WordSolver};

/// An edge of `E⁺`: either `e` or its formal inverse `e⁻¹`, which has source
/// and range interchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: EdgeId,
    pub inverse: bool,
}

impl SignedEdge {
    pub fn pos(edge: EdgeId) -> Self {
        SignedEdge { edge, inverse: false }
    }

    pub fn neg(edge: EdgeId) -> Self {
        SignedEdge { edge, inverse: true }
    }

    pub fn inv(self) -> Self {
        SignedEdge {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }

    pub fn range(self, sk: &Skeleton) -> VertexId {
        let e = sk.edge(self.edge);
        if self.inverse {
            e.source
        } else {
            e.range
        }
    }

    pub fn source(self, sk: &Skeleton) -> VertexId {
        let e = sk.edge(self.edge);
        if self.inverse {
            e.range
        } else {
            e.source
        }
    }
}

/// A word in `E⁺`, in composition order, with its endpoints. The empty word
/// is the identity at its anchor vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GWord {
    range: VertexId,
    source: VertexId,
    letters: Vec<SignedEdge>,
}

/// An element of ℤᵏ: the extended degree `d′` of a groupoid word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeZ(pub Vec<i64>);

impl From<&Degree> for DegreeZ {
    fn from(d: &Degree) -> Self {
        DegreeZ(d.coords().iter().map(|&c| c as i64).collect())
    }
}

impl fmt::Display for DegreeZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{c}")?;
        }
        f.write_char(')')
    }
}

fn check_chain(sk: &Skeleton, letters: &[SignedEdge]) -> Result<()> {
    for w in letters.windows(2) {
        if w[0].source(sk) != w[1].range(sk) {
            return Err(Error::NotComposable(format!(
                "{} cannot follow {}",
                letter_text(sk, w[0]),
                letter_text(sk, w[1])
            )));
        }
    }
    Ok(())
}

fn letter_text(sk: &Skeleton, l: SignedEdge) -> String {
    if l.inverse {
        format!("{}^-1", sk.edge_name(l.edge))
    } else {
        sk.edge_name(l.edge).to_owned()
    }
}

pub(crate) fn reduce_letters(letters: &[SignedEdge]) -> Vec<SignedEdge> {
    let mut out: Vec<SignedEdge> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl GWord {
    pub fn empty(v: VertexId) -> Self {
        GWord {
            range: v,
            source: v,
            letters: Vec::new(),
        }
    }

    /// A nonempty word; fails on an empty letter list or a broken chain.
    pub fn new(sk: &Skeleton, letters: Vec<SignedEdge>) -> Result<Self> {
        let (first, last) = match (letters.first(), letters.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::MissingAnchor),
        };
        check_chain(sk, &letters)?;
        Ok(GWord {
            range: first.range(sk),
            source: last.source(sk),
            letters,
        })
    }

    /// Like [`GWord::new`], but the empty list gives the identity at `anchor`.
    pub fn with_anchor(sk: &Skeleton, anchor: VertexId, letters: Vec<SignedEdge>) -> Result<Self> {
        if letters.is_empty() {
            Ok(GWord::empty(anchor))
        } else {
            GWord::new(sk, letters)
        }
    }

    pub(crate) fn from_parts(range: VertexId, source: VertexId, letters: Vec<SignedEdge>) -> Self {
        GWord { range, source, letters }
    }

    pub fn from_path(p: &EdgePath) -> Self {
        GWord {
            range: p.range(),
            source: p.source(),
            letters: p.edges().iter().map(|&e| SignedEdge::pos(e)).collect(),
        }
    }

    /// Parses whitespace-separated tokens `name` or `name^-1`. The empty
    /// string needs an anchor.
    pub fn parse(sk: &Skeleton, text: &str, anchor: Option<VertexId>) -> Result<Self> {
        let letters = parse_letters(sk, text)?;
        match anchor {
            Some(v) => GWord::with_anchor(sk, v, letters),
            None => GWord::new(sk, letters),
        }
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn letters(&self) -> &[SignedEdge] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> GWord {
        GWord {
            range: self.range,
            source: self.source,
            letters: reduce_letters(&self.letters),
        }
    }

    pub fn inverse(&self) -> GWord {
        GWord {
            range: self.source,
            source: self.range,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self ∘ other`, unreduced.
    pub fn compose(&self, other: &GWord) -> Result<GWord> {
        if self.source != other.range {
            return Err(Error::NotComposable(
                "source of the left word is not the range of the right word".into(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GWord {
            range: self.range,
            source: other.source,
            letters,
        })
    }

    pub fn display<'a>(&'a self, sk: &'a Skeleton) -> impl fmt::Display + 'a {
        DisplayWord { w: self, sk }
    }
}

pub(crate) fn parse_letters(sk: &Skeleton, text: &str) -> Result<Vec<SignedEdge>> {
    text.split_whitespace()
        .map(|tok| {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            if name.is_empty() || name.contains('^') {
                return Err(Error::BadToken(tok.to_owned()));
            }
            let edge = sk.edge_id(name).ok_or_else(|| Error::UnknownEdge(name.to_owned()))?;
            Ok(SignedEdge { edge, inverse })
        })
        .collect()
}

struct DisplayWord<'a> {
    w: &'a GWord,
    sk: &'a Skeleton,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return write!(f, "id({})", self.sk.vertex_name(self.w.range));
        }
        for (i, l) in self.w.letters.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            f.write_str(&letter_text(self.sk, *l))?;
        }
        Ok(())
    }
}

/// The image of an element of Λ under the canonical functor `i: Λ → G(Λ)`:
/// the positive word spelling its normal form.
pub fn canonical_functor(nf: &NormalForm) -> GWord {
    GWord::from_path(&nf.path())
}

/// `d′(w)`: the signed count of colors in `w`.
pub fn gword_degree(sk: &Skeleton, w: &GWord) -> DegreeZ {
    let mut d = vec![0i64; sk.rank()];
    for l in w.letters() {
        d[sk.color(l.edge) - 1] += if l.inverse { -1 } else { 1 };
    }
    DegreeZ(d)
}
