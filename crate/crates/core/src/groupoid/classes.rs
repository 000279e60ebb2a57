//! Equality classes of `i(λ)` for elements of a k-graph up to a degree bound.
//!
//! Elements are grouped by (range, source, degree); only elements within a
//! group can be equal in the groupoid. Single edges are classified first.
//! Longer elements are rewritten letter by letter to class representatives,
//! which decides most equalities without a search; the remaining buckets are
//! compared with [`WordSolver`].

use std::collections::HashMap;

use crate::error::Result;
use crate::kgraph::{KGraph, NormalForm};
use crate::skeleton::{Degree, VertexId};

use super::search::{Budget, EqualityVerdict, SearchSpent, Witness, WordSolver};
use super::{canonical_functor, Derivation, GWord, SignedEdge};

/// How two classes of one group relate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    Distinct(Witness),
    Unknown(SearchSpent),
}

/// Elements of one group that are equal in the groupoid. `to_rep[k]` turns
/// the word of `members[k]` into the word of `members[0]`.
#[derive(Clone, Debug)]
pub struct Class {
    pub members: Vec<usize>,
    pub to_rep: Vec<Derivation>,
}

#[derive(Clone, Debug)]
enum Relations {
    /// No squares act: all classes are singletons and pairwise distinct.
    Free,
    /// Keyed by class indices `(i, j)` with `i < j`.
    Pairs(HashMap<(usize, usize), PairVerdict>),
}

/// All elements up to the bound with one (range, source, degree).
#[derive(Clone, Debug)]
pub struct Group {
    pub range: VertexId,
    pub source: VertexId,
    pub degree: Degree,
    pub elements: Vec<NormalForm>,
    pub words: Vec<GWord>,
    pub classes: Vec<Class>,
    pub class_of: Vec<usize>,
    relations: Relations,
}

impl Group {
    /// `None` when the two classes coincide.
    pub fn relation(&self, i: usize, j: usize) -> Option<PairVerdict> {
        if i == j {
            return None;
        }
        match &self.relations {
            Relations::Free => {
                let (a, b) = (self.classes[i].members[0], self.classes[j].members[0]);
                Some(PairVerdict::Distinct(Witness::FreeReduction {
                    first: self.words[a].clone(),
                    second: self.words[b].clone(),
                }))
            }
            Relations::Pairs(map) => map.get(&(i.min(j), i.max(j))).cloned(),
        }
    }

    /// Derivation from the word of element `a` to the word of element `b`,
    /// when they are in one class.
    pub fn derivation(&self, a: usize, b: usize) -> Option<Derivation> {
        let c = self.class_of[a];
        if c != self.class_of[b] {
            return None;
        }
        let class = &self.classes[c];
        let pos = |x: usize| class.members.iter().position(|&m| m == x).expect("member");
        let up = class.to_rep[pos(a)].clone();
        let down = class.to_rep[pos(b)].reversed();
        Some(up.then(down))
    }

    fn unknown_pairs(&self) -> Vec<UnknownPair> {
        let Relations::Pairs(map) = &self.relations else {
            return Vec::new();
        };
        let mut keys: Vec<_> = map
            .iter()
            .filter_map(|(k, v)| match v {
                PairVerdict::Unknown(spent) => Some((*k, *spent)),
                PairVerdict::Distinct(_) => None,
            })
            .collect();
        keys.sort_by_key(|(k, _)| *k);
        keys.into_iter()
            .map(|((i, j), spent)| UnknownPair {
                first: self.elements[self.classes[i].members[0]].clone(),
                second: self.elements[self.classes[j].members[0]].clone(),
                spent,
            })
            .collect()
    }
}

/// A pair the search could not decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownPair {
    pub first: NormalForm,
    pub second: NormalForm,
    pub spent: SearchSpent,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairCounts {
    pub total: usize,
    pub equal: usize,
    pub distinct: usize,
    pub unknown: usize,
}

/// The groups of all elements up to a bound, each split into classes.
#[derive(Clone, Debug)]
pub struct ElementClasses {
    pub bound: Degree,
    pub groups: Vec<Group>,
    index: HashMap<NormalForm, (usize, usize)>,
}

/// Rewrites each letter of a positive word to its edge representative.
fn lift(solver: &WordSolver, w: &GWord) -> Derivation {
    let mut d = Derivation::trivial(w.clone());
    let mut cur = w.letters().to_vec();
    for i in 0..cur.len() {
        let Some((rep, ed)) = solver.edge_lemma(cur[i].edge) else {
            continue;
        };
        if rep == cur[i].edge {
            continue;
        }
        let lifted = ed.in_context(solver.system(), &cur[..i], &cur[i + 1..]);
        d = d.then(lifted);
        cur[i] = SignedEdge::pos(rep);
    }
    d
}

fn classify_group(solver: &WordSolver, mut group: Group) -> Group {
    let n = group.elements.len();
    if !solver.has_squares_at(group.range) {
        group.classes = (0..n)
            .map(|i| Class {
                members: vec![i],
                to_rep: vec![Derivation::trivial(group.words[i].clone())],
            })
            .collect();
        group.class_of = (0..n).collect();
        group.relations = Relations::Free;
        return group;
    }

    // buckets of identical rewritten words
    let lifts: Vec<Derivation> = group.words.iter().map(|w| lift(solver, w)).collect();
    let mut bucket_of_word: HashMap<&[SignedEdge], usize> = HashMap::new();
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (i, l) in lifts.iter().enumerate() {
        let b = *bucket_of_word.entry(l.end().letters()).or_insert_with(|| {
            buckets.push(Vec::new());
            buckets.len() - 1
        });
        buckets[b].push(i);
    }

    let mut classes: Vec<Class> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    let mut pairs = HashMap::new();
    for bucket in &buckets {
        let head = bucket[0];
        let mut verdicts = Vec::new();
        let mut joined = None;
        for (ci, c) in classes.iter().enumerate() {
            let rep = c.members[0];
            match solver.solve(&group.words[head], &group.words[rep]) {
                EqualityVerdict::Equal(d) => {
                    joined = Some((ci, d));
                    break;
                }
                EqualityVerdict::Distinct(w) => verdicts.push((ci, PairVerdict::Distinct(w))),
                EqualityVerdict::Unknown(s) => verdicts.push((ci, PairVerdict::Unknown(s))),
            }
        }
        let (ci, head_to_rep) = match joined {
            Some((ci, d)) => (ci, d),
            None => {
                let ci = classes.len();
                for (cj, v) in verdicts {
                    pairs.insert((cj, ci), v);
                }
                classes.push(Class {
                    members: Vec::new(),
                    to_rep: Vec::new(),
                });
                (ci, Derivation::trivial(group.words[head].clone()))
            }
        };
        let back = lifts[head].reversed();
        for &m in bucket {
            let d = if m == head {
                head_to_rep.clone()
            } else {
                lifts[m].clone().then(back.clone()).then(head_to_rep.clone())
            };
            classes[ci].members.push(m);
            classes[ci].to_rep.push(d);
            class_of[m] = ci;
        }
    }
    // members in element order, representative first
    for c in &mut classes {
        let mut zipped: Vec<(usize, Derivation)> = c.members.drain(..).zip(c.to_rep.drain(..)).collect();
        zipped.sort_by_key(|(m, _)| *m);
        let rep = zipped[0].0;
        let rep_to_old = zipped[0].1.clone();
        for (m, d) in zipped {
            let d = if m == rep {
                Derivation::trivial(group.words[m].clone())
            } else {
                d.then(rep_to_old.reversed())
            };
            c.members.push(m);
            c.to_rep.push(d);
        }
    }
    group.classes = classes;
    group.class_of = class_of;
    group.relations = Relations::Pairs(pairs);
    group
}

impl ElementClasses {
    pub fn compute(kg: &KGraph, bound: &Degree, budget: Budget) -> Result<Self> {
        let mut solver = WordSolver::new(kg.system(), budget);
        solver.learn_edge_lemmas();
        let mut raw: Vec<Group> = Vec::new();
        let mut slot: HashMap<(VertexId, VertexId, Degree), usize> = HashMap::new();
        for nf in kg.elements_up_to(bound)? {
            let key = (nf.range(), nf.source(), nf.degree().clone());
            let g = *slot.entry(key).or_insert_with(|| {
                raw.push(Group {
                    range: nf.range(),
                    source: nf.source(),
                    degree: nf.degree().clone(),
                    elements: Vec::new(),
                    words: Vec::new(),
                    classes: Vec::new(),
                    class_of: Vec::new(),
                    relations: Relations::Free,
                });
                raw.len() - 1
            });
            raw[g].words.push(canonical_functor(&nf));
            raw[g].elements.push(nf);
        }
        let groups: Vec<Group> = raw.into_iter().map(|g| classify_group(&solver, g)).collect();
        let mut index = HashMap::new();
        for (gi, g) in groups.iter().enumerate() {
            for (ei, nf) in g.elements.iter().enumerate() {
                index.insert(nf.clone(), (gi, ei));
            }
        }
        Ok(ElementClasses {
            bound: bound.clone(),
            groups,
            index,
        })
    }

    /// (group, element) indices of `nf`.
    pub fn locate(&self, nf: &NormalForm) -> Option<(usize, usize)> {
        self.index.get(nf).copied()
    }

    /// Classes with more than one member.
    pub fn collapsed(&self) -> impl Iterator<Item = (&Group, &Class)> {
        self.groups
            .iter()
            .flat_map(|g| g.classes.iter().map(move |c| (g, c)))
            .filter(|(_, c)| c.members.len() > 1)
    }

    pub fn pair_counts(&self) -> PairCounts {
        let mut out = PairCounts::default();
        for g in &self.groups {
            let n = g.elements.len();
            out.total += n * n.saturating_sub(1) / 2;
            let sizes: Vec<usize> = g.classes.iter().map(|c| c.members.len()).collect();
            let equal = sizes.iter().map(|s| s * s.saturating_sub(1) / 2).sum::<usize>();
            let unknown = match &g.relations {
                Relations::Free => 0,
                Relations::Pairs(map) => map
                    .iter()
                    .filter(|(_, v)| matches!(v, PairVerdict::Unknown(_)))
                    .map(|(&(i, j), _)| sizes[i] * sizes[j])
                    .sum(),
            };
            out.equal += equal;
            out.unknown += unknown;
            out.distinct += n * n.saturating_sub(1) / 2 - equal - unknown;
        }
        out
    }

    pub fn unknown_pairs(&self) -> Vec<UnknownPair> {
        self.groups.iter().flat_map(|g| g.unknown_pairs()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum Injectivity {
    InjectiveWithinBound,
    NonInjective {
        first: NormalForm,
        second: NormalForm,
        /// From the word of `first` to the word of `second`.
        derivation: Derivation,
    },
    Inconclusive {
        unknown: Vec<UnknownPair>,
    },
}

impl Injectivity {
    pub fn label(&self) -> &'static str {
        match self {
            Injectivity::InjectiveWithinBound => "injective-within-bound",
            Injectivity::NonInjective { .. } => "non-injective",
            Injectivity::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub classes: ElementClasses,
    pub pairs: PairCounts,
    pub summary: Injectivity,
}

/// Compares `i(λ)` and `i(μ)` for all distinct parallel `λ, μ` of equal
/// degree up to `bound`.
pub fn injectivity_report(kg: &KGraph, bound: &Degree, budget: Budget) -> Result<InjectivityReport> {
    let classes = ElementClasses::compute(kg, bound, budget)?;
    let pairs = classes.pair_counts();
    // first by total degree and edge names, so the choice does not depend
    // on how colors are numbered
    let sk = kg.skeleton();
    let first = classes.collapsed().min_by(|(g1, c1), (g2, c2)| {
        let key = |g: &Group, c: &Class| (g.degree.total(), g.elements[c.members[0]].name_key(sk));
        key(g1, c1).cmp(&key(g2, c2))
    });
    let summary = if let Some((g, c)) = first {
        let (a, b) = (c.members[0], c.members[1]);
        Injectivity::NonInjective {
            first: g.elements[a].clone(),
            second: g.elements[b].clone(),
            derivation: g.derivation(a, b).expect("same class"),
        }
    } else {
        let unknown = classes.unknown_pairs();
        if unknown.is_empty() {
            Injectivity::InjectiveWithinBound
        } else {
            Injectivity::Inconclusive { unknown }
        }
    };
    Ok(InjectivityReport {
        classes,
        pairs,
        summary,
    })
}

/// Which factor of `α = γ δ` is compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSide {
    /// `γ`, the factor at the range.
    Range,
    /// `δ`, the factor at the source.
    Source,
}

/// `i(α) = i(β)` but the degree-`m` factors of `α` and `β` on one side
/// are distinct in the groupoid.
#[derive(Clone, Debug)]
pub struct LambdaBarWitness {
    pub alpha: NormalForm,
    pub beta: NormalForm,
    pub m: Degree,
    pub side: FactorSide,
    pub gamma: NormalForm,
    pub epsilon: NormalForm,
    pub witness: Witness,
    /// From the word of `alpha` to the word of `beta`.
    pub derivation: Derivation,
}

#[derive(Clone, Debug)]
pub enum LambdaBarOutcome {
    HoldsWithinBound,
    Counterexample(Box<LambdaBarWitness>),
    Inconclusive(Vec<UnknownPair>),
}

impl LambdaBarOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            LambdaBarOutcome::HoldsWithinBound => "holds within bound",
            LambdaBarOutcome::Counterexample(_) => "counterexample",
            LambdaBarOutcome::Inconclusive(_) => "inconclusive within bound",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LambdaBarReport {
    pub classes: ElementClasses,
    /// Factor pairs compared.
    pub checked: usize,
    pub outcome: LambdaBarOutcome,
}

/// Looks for `i(α) = i(β)` whose factorizations at some `0 < m < d(α)`
/// have factors that are distinct in the groupoid, which would break unique
/// factorization in the image of `i`. A clean result only covers elements up
/// to `bound`.
pub fn lambda_bar_check(kg: &KGraph, bound: &Degree, budget: Budget) -> Result<LambdaBarReport> {
    let classes = ElementClasses::compute(kg, bound, budget)?;
    let mut unknown = classes.unknown_pairs();
    let mut checked = 0;
    let mut found = None;
    'outer: for g in &classes.groups {
        for c in g.classes.iter().filter(|c| c.members.len() > 1) {
            let rep = c.members[0];
            let beta = &g.elements[rep];
            for &a in &c.members[1..] {
                let alpha = &g.elements[a];
                for m in g.degree.below() {
                    if m.is_zero() || m == g.degree {
                        continue;
                    }
                    let fa = kg.factorize(alpha, &m)?;
                    let fb = kg.factorize(beta, &m)?;
                    for (side, x, y) in [(FactorSide::Range, &fa.0, &fb.0), (FactorSide::Source, &fa.1, &fb.1)] {
                        checked += 1;
                        let verdict = compare(&classes, x, y);
                        match verdict {
                            None => {}
                            Some(PairVerdict::Unknown(spent)) => unknown.push(UnknownPair {
                                first: x.clone(),
                                second: y.clone(),
                                spent,
                            }),
                            Some(PairVerdict::Distinct(witness)) => {
                                found = Some(LambdaBarWitness {
                                    alpha: alpha.clone(),
                                    beta: beta.clone(),
                                    m: m.clone(),
                                    side,
                                    gamma: x.clone(),
                                    epsilon: y.clone(),
                                    witness,
                                    derivation: g.derivation(a, rep).expect("same class"),
                                });
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    let outcome = match found {
        Some(w) => LambdaBarOutcome::Counterexample(Box::new(w)),
        None if unknown.is_empty() => LambdaBarOutcome::HoldsWithinBound,
        None => LambdaBarOutcome::Inconclusive(unknown),
    };
    Ok(LambdaBarReport {
        classes,
        checked,
        outcome,
    })
}

fn compare(classes: &ElementClasses, x: &NormalForm, y: &NormalForm) -> Option<PairVerdict> {
    if (x.range(), x.source()) != (y.range(), y.source()) {
        return Some(PairVerdict::Distinct(Witness::Endpoints {
            first: (x.range(), x.source()),
            second: (y.range(), y.source()),
        }));
    }
    let (gx, ix) = classes.locate(x).expect("factor within bound");
    let (gy, iy) = classes.locate(y).expect("factor within bound");
    debug_assert_eq!(gx, gy);
    let g = &classes.groups[gx];
    g.relation(g.class_of[ix], g.class_of[iy])
}
