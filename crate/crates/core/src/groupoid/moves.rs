use std::collections::BTreeSet;
use std::fmt;

use crate::kgraph::{EdgePair, SquareSystem};
use crate::skeleton::Skeleton;

use super::{reduce_letters, GWord, SignedEdge};

/// One elementary rewrite of a groupoid word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// At `pos`, replace the positive subword `e f` by `to = (g, h)` where
    /// `ef = gh` is a square (`inverted = false`), or replace `f⁻¹ e⁻¹` by
    /// `h⁻¹ g⁻¹` (`inverted = true`). The result is freely reduced.
    Square { pos: usize, to: EdgePair, inverted: bool },
    /// Insert `letter letter⁻¹` before position `pos`. Not reduced.
    Insert { pos: usize, letter: SignedEdge },
}

pub(crate) fn apply_letters(sys: &SquareSystem, letters: &[SignedEdge], mv: &Move) -> Option<Vec<SignedEdge>> {
    let sk = sys.skeleton();
    match *mv {
        Move::Square { pos, to, inverted } => {
            let (x, y) = (*letters.get(pos)?, *letters.get(pos + 1)?);
            let (from, new) = if inverted {
                if !(x.inverse && y.inverse) {
                    return None;
                }
                ((y.edge, x.edge), [SignedEdge::neg(to.1), SignedEdge::neg(to.0)])
            } else {
                if x.inverse || y.inverse {
                    return None;
                }
                ((x.edge, y.edge), [SignedEdge::pos(to.0), SignedEdge::pos(to.1)])
            };
            if !sys.partners(from).contains(&to) {
                return None;
            }
            let mut out = letters.to_vec();
            out[pos] = new[0];
            out[pos + 1] = new[1];
            Some(reduce_letters(&out))
        }
        Move::Insert { pos, letter } => {
            if pos > letters.len() {
                return None;
            }
            let at = if pos < letters.len() {
                letters[pos].range(sk)
            } else if let Some(last) = letters.last() {
                last.source(sk)
            } else {
                // empty word: the caller checks the anchor
                letter.range(sk)
            };
            if letter.range(sk) != at {
                return None;
            }
            let mut out = Vec::with_capacity(letters.len() + 2);
            out.extend_from_slice(&letters[..pos]);
            out.push(letter);
            out.push(letter.inv());
            out.extend_from_slice(&letters[pos..]);
            Some(out)
        }
    }
}

/// Applies `mv` to `w`, or `None` if it does not apply there.
pub fn apply_move(sys: &SquareSystem, w: &GWord, mv: &Move) -> Option<GWord> {
    if let (Move::Insert { letter, .. }, true) = (mv, w.is_empty()) {
        if letter.range(sys.skeleton()) != w.range() {
            return None;
        }
    }
    apply_letters(sys, w.letters(), mv).map(|letters| GWord::from_parts(w.range(), w.source(), letters))
}

/// Every `(move, result)` for square moves at every position and every
/// insertion of a cancelling pair.
pub fn square_moves(sys: &SquareSystem, w: &GWord) -> Vec<(Move, GWord)> {
    let sk = sys.skeleton();
    let letters = w.letters();
    let mut out = Vec::new();
    for pos in 0..letters.len().saturating_sub(1) {
        let (x, y) = (letters[pos], letters[pos + 1]);
        let candidates: &[EdgePair] = match (x.inverse, y.inverse) {
            (false, false) => sys.partners((x.edge, y.edge)),
            (true, true) => sys.partners((y.edge, x.edge)),
            _ => &[],
        };
        for &to in candidates {
            let mv = Move::Square {
                pos,
                to,
                inverted: x.inverse,
            };
            let next = apply_move(sys, w, &mv).expect("candidate applies");
            out.push((mv, next));
        }
    }
    for pos in 0..=letters.len() {
        for (id, _) in sk.edges() {
            for letter in [SignedEdge::pos(id), SignedEdge::neg(id)] {
                let mv = Move::Insert { pos, letter };
                if let Some(next) = apply_move(sys, w, &mv) {
                    out.push((mv, next));
                }
            }
        }
    }
    out
}

/// The set of words one move away from `w`.
pub fn square_neighbors(sys: &SquareSystem, w: &GWord) -> BTreeSet<GWord> {
    square_moves(sys, w).into_iter().map(|(_, n)| n).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// The two words have the same free reduction.
    FreeReduce,
    Move(Move),
}

/// One link of a derivation. For a reversed move, `word` is the word the
/// move was applied to and the previous word is its result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub reversed: bool,
    pub word: GWord,
}

/// A chain of words, each obtained from the previous one by a move (in
/// either direction) or by free reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: GWord,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("derivation step {index} does not follow from the previous word")]
pub struct ReplayError {
    pub index: usize,
}

impl Derivation {
    pub fn trivial(w: GWord) -> Self {
        Derivation {
            start: w,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> &GWord {
        self.steps.last().map_or(&self.start, |s| &s.word)
    }

    pub fn words(&self) -> impl Iterator<Item = &GWord> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.word))
    }

    /// Number of square and insertion moves; free reductions are not counted.
    pub fn move_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.rule, Rule::Move(_))).count()
    }

    pub fn push_reduce(&mut self, word: GWord) {
        if &word != self.end() {
            self.steps.push(Step {
                rule: Rule::FreeReduce,
                reversed: false,
                word,
            });
        }
    }

    pub fn reversed(&self) -> Derivation {
        let words: Vec<&GWord> = self.words().collect();
        let steps = self
            .steps
            .iter()
            .enumerate()
            .rev()
            .map(|(i, s)| Step {
                rule: s.rule,
                reversed: !s.reversed,
                word: words[i].clone(),
            })
            .collect();
        Derivation {
            start: self.end().clone(),
            steps,
        }
    }

    /// The same derivation applied to inverse words: every word `w` becomes
    /// `w⁻¹` and every move is mirrored.
    pub fn inverted(&self) -> Derivation {
        let words: Vec<&GWord> = self.words().collect();
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let from = if s.reversed { &s.word } else { words[i] };
                let n = from.len();
                let rule = match s.rule {
                    Rule::FreeReduce => Rule::FreeReduce,
                    Rule::Move(Move::Square { pos, to, inverted }) => Rule::Move(Move::Square {
                        pos: n - 2 - pos,
                        to,
                        inverted: !inverted,
                    }),
                    Rule::Move(Move::Insert { pos, letter }) => Rule::Move(Move::Insert { pos: n - pos, letter }),
                };
                Step {
                    rule,
                    reversed: s.reversed,
                    word: s.word.inverse(),
                }
            })
            .collect();
        Derivation {
            start: self.start.inverse(),
            steps,
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn then(mut self, other: Derivation) -> Derivation {
        assert_eq!(self.end(), &other.start, "derivations do not meet");
        self.steps.extend(other.steps);
        self
    }

    /// The same derivation performed inside `prefix · _ · suffix`. A square
    /// move in context may cancel against the context, so each lifted move is
    /// followed (or, when reversed, preceded) by a free reduction step.
    pub fn in_context(&self, sys: &SquareSystem, prefix: &[SignedEdge], suffix: &[SignedEdge]) -> Derivation {
        let sk = sys.skeleton();
        let wrap = |w: &GWord| -> GWord {
            let mut letters = prefix.to_vec();
            letters.extend_from_slice(w.letters());
            letters.extend_from_slice(suffix);
            let range = prefix.first().map_or(w.range(), |l| l.range(sk));
            let source = suffix.last().map_or(w.source(), |l| l.source(sk));
            GWord::from_parts(range, source, letters)
        };
        let shift = |mv: Move| match mv {
            Move::Square { pos, to, inverted } => Move::Square {
                pos: pos + prefix.len(),
                to,
                inverted,
            },
            Move::Insert { pos, letter } => Move::Insert {
                pos: pos + prefix.len(),
                letter,
            },
        };
        let mut out = Derivation::trivial(wrap(&self.start));
        for s in &self.steps {
            let target = wrap(&s.word);
            match s.rule {
                Rule::FreeReduce => out.push_reduce(target),
                Rule::Move(mv) => {
                    let mv = shift(mv);
                    if !s.reversed {
                        let z = apply_move(sys, out.end(), &mv).expect("lifted move applies");
                        out.steps.push(Step {
                            rule: Rule::Move(mv),
                            reversed: false,
                            word: z,
                        });
                        out.push_reduce(target);
                    } else {
                        let z = apply_move(sys, &target, &mv).expect("lifted move applies");
                        out.push_reduce(z);
                        out.steps.push(Step {
                            rule: Rule::Move(mv),
                            reversed: true,
                            word: target,
                        });
                    }
                }
            }
        }
        out
    }

    /// Re-checks every step against [`apply_move`] and free reduction.
    pub fn replay(&self, sys: &SquareSystem) -> Result<(), ReplayError> {
        let mut prev = &self.start;
        for (index, s) in self.steps.iter().enumerate() {
            let ok = match s.rule {
                Rule::FreeReduce => {
                    prev.range() == s.word.range()
                        && prev.source() == s.word.source()
                        && prev.free_reduce() == s.word.free_reduce()
                }
                Rule::Move(mv) => {
                    let (from, to) = if s.reversed { (&s.word, prev) } else { (prev, &s.word) };
                    apply_move(sys, from, &mv).as_ref() == Some(to)
                }
            };
            if !ok {
                return Err(ReplayError { index });
            }
            prev = &s.word;
        }
        Ok(())
    }

    /// `w0 = w1 = ... = wn`.
    pub fn display<'a>(&'a self, sk: &'a Skeleton) -> impl fmt::Display + 'a {
        DisplayDerivation { d: self, sk }
    }
}

struct DisplayDerivation<'a> {
    d: &'a Derivation,
    sk: &'a Skeleton,
}

impl fmt::Display for DisplayDerivation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.d.words().enumerate() {
            if i > 0 {
                f.write_str(" = ")?;
            }
            write!(f, "{}", w.display(self.sk))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groupoid::gword_degree;
    use crate::groupoid::tests::random_word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn system(f: (Skeleton, Vec<crate::kgraph::Square>)) -> SquareSystem {
        SquareSystem::new(f.0, f.1).unwrap()
    }

    #[test]
    fn square_move_on_ad() {
        let sys = system(fixtures::single_vertex());
        let sk = sys.skeleton();
        let ad = GWord::parse(sk, "a d", None).unwrap();
        let da = GWord::parse(sk, "d a", None).unwrap();
        assert!(square_neighbors(&sys, &ad).contains(&da));
    }

    #[test]
    fn inverted_square_move() {
        let sys = system(fixtures::single_vertex());
        let sk = sys.skeleton();
        // (c d)^-1 = d^-1 c^-1 and cd = ea
        let w = GWord::parse(sk, "d^-1 c^-1", None).unwrap();
        let expect = GWord::parse(sk, "a^-1 e^-1", None).unwrap();
        assert!(square_neighbors(&sys, &w).contains(&expect));
        let mixed = GWord::parse(sk, "d^-1 c", None).unwrap();
        assert!(square_moves(&sys, &mixed)
            .iter()
            .all(|(m, _)| matches!(m, Move::Insert { .. })));
    }

    #[test]
    fn empty_word_neighbors_are_insertions() {
        let sys = system(fixtures::four_vertex());
        let sk = sys.skeleton();
        let q = sk.vertex("q").unwrap();
        let moves = square_moves(&sys, &GWord::empty(q));
        assert!(!moves.is_empty());
        for (m, w) in &moves {
            assert!(matches!(m, Move::Insert { pos: 0, .. }));
            assert_eq!(w.len(), 2);
            assert_eq!(w.range(), q);
            assert!(w.free_reduce().is_empty());
        }
        // edges with range q: f, i; edges with source q: a, b, d
        assert_eq!(moves.len(), 5);
    }

    #[test]
    fn square_moves_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sys = system(fixtures::single_vertex());
        let sk = sys.skeleton();
        for _ in 0..300 {
            let w = random_word(sk, &mut rng, 8).free_reduce();
            for (m, n) in square_moves(&sys, &w) {
                if let Move::Square { pos, to, inverted } = m {
                    // only moves whose result needed no reduction are reversible as moves
                    if n.len() != w.len() {
                        continue;
                    }
                    let back: Vec<_> = square_moves(&sys, &n)
                        .into_iter()
                        .filter(|(m2, _)| matches!(m2, Move::Square { pos: p2, inverted: i2, .. } if *p2 == pos && *i2 == inverted))
                        .map(|(_, x)| x)
                        .collect();
                    assert!(back.contains(&w), "{:?}", to);
                    assert_eq!(gword_degree(sk, &n), gword_degree(sk, &w));
                }
            }
        }
    }

    #[test]
    fn reverse_and_replay() {
        let sys = system(fixtures::single_vertex());
        let sk = sys.skeleton();
        let a = GWord::parse(sk, "a", None).unwrap();
        let d = sk.edge_id("d").unwrap();
        let mut der = Derivation::trivial(a.clone());
        let ins = Move::Insert {
            pos: 1,
            letter: SignedEdge::pos(d),
        };
        let w1 = apply_move(&sys, &a, &ins).unwrap();
        assert_eq!(w1.display(sk).to_string(), "a d d^-1");
        der.steps.push(Step {
            rule: Rule::Move(ins),
            reversed: false,
            word: w1.clone(),
        });
        let sq = Move::Square {
            pos: 0,
            to: (d, sk.edge_id("a").unwrap()),
            inverted: false,
        };
        let w2 = apply_move(&sys, &w1, &sq).unwrap();
        assert_eq!(w2.display(sk).to_string(), "d a d^-1");
        der.steps.push(Step {
            rule: Rule::Move(sq),
            reversed: false,
            word: w2,
        });
        assert_eq!(der.replay(&sys), Ok(()));
        assert_eq!(der.reversed().replay(&sys), Ok(()));
        let inv = der.inverted();
        assert_eq!(inv.replay(&sys), Ok(()));
        assert_eq!(inv.end().display(sk).to_string(), "d a^-1 d^-1");
        assert_eq!(der.reversed().inverted().replay(&sys), Ok(()));
        assert_eq!(der.reversed().reversed(), der);
        assert_eq!(der.display(sk).to_string(), "a = a d d^-1 = d a d^-1");

        let ctx = der.in_context(
            &sys,
            &[SignedEdge::neg(sk.edge_id("a").unwrap())],
            &[SignedEdge::pos(d)],
        );
        assert_eq!(ctx.replay(&sys), Ok(()));
        assert_eq!(ctx.end().display(sk).to_string(), "a^-1 d a d^-1 d");
        let rctx = der.reversed().in_context(&sys, &[SignedEdge::pos(d)], &[]);
        assert_eq!(rctx.replay(&sys), Ok(()));

        let mut bad = der.clone();
        bad.steps[1].word = GWord::parse(sk, "b", None).unwrap();
        assert_eq!(bad.replay(&sys), Err(ReplayError { index: 1 }));
    }
}
