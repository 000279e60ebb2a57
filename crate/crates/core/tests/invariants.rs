//! Property tests over the fixtures and random words.

use kgraph_core::groupoid::{square_moves, Move};
use kgraph_core::{
    canonical_functor, fixtures, gword_degree, Degree, EdgeId, EdgePath, GWord, KGraph, NormalForm, SignedEdge,
    Skeleton, Square, SquareSystem,
};
use proptest::prelude::*;

fn kgraphs() -> Vec<KGraph> {
    let all: Vec<(Skeleton, Vec<Square>)> = vec![
        fixtures::single_vertex(),
        fixtures::single_vertex_swapped(),
        fixtures::torus(),
        fixtures::bouquet(2),
        fixtures::product(),
        fixtures::rank3_commuting(),
    ];
    all.into_iter().map(|(sk, sq)| KGraph::new(sk, sq).unwrap()).collect()
}

/// A random walk of `len` edges following `choices`, in composition order.
fn walk(sk: &Skeleton, choices: &[usize], signed: bool) -> Vec<SignedEdge> {
    let letters: Vec<SignedEdge> = sk
        .edges()
        .flat_map(|(id, _)| [SignedEdge::pos(id), SignedEdge::neg(id)])
        .filter(|l| signed || !l.inverse)
        .collect();
    let mut out: Vec<SignedEdge> = Vec::new();
    for &c in choices {
        let next: Vec<SignedEdge> = match out.last() {
            None => letters.clone(),
            Some(p) => letters
                .iter()
                .copied()
                .filter(|l| l.range(sk) == p.source(sk))
                .collect(),
        };
        if next.is_empty() {
            break;
        }
        out.push(next[c % next.len()]);
    }
    out
}

fn path(sk: &Skeleton, choices: &[usize]) -> Option<EdgePath> {
    let edges: Vec<EdgeId> = walk(sk, choices, false).into_iter().map(|l| l.edge).collect();
    (!edges.is_empty()).then(|| EdgePath::from_edges(sk, edges).unwrap())
}

fn to_path(kg: &KGraph, nf: &NormalForm) -> EdgePath {
    if nf.is_vertex() {
        EdgePath::vertex(nf.range())
    } else {
        EdgePath::from_edges(kg.skeleton(), nf.edges().to_vec()).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_is_stable(which in 0usize..6, choices in prop::collection::vec(any::<usize>(), 1..8), swaps in prop::collection::vec(any::<usize>(), 0..6)) {
        let kg = &kgraphs()[which];
        let sk = kg.skeleton();
        let Some(p) = path(sk, &choices) else { return Ok(()) };
        let nf = kg.normalize(&p);
        prop_assert_eq!(nf.degree(), &p.degree(sk));
        prop_assert_eq!(kg.normalize(&to_path(kg, &nf)), nf.clone());
        // any shuffle of the path has the same normal form
        let mut edges = p.edges().to_vec();
        for s in swaps {
            if edges.len() < 2 {
                break;
            }
            let i = s % (edges.len() - 1);
            if sk.color(edges[i]) != sk.color(edges[i + 1]) {
                let (g, h) = kg.swap(edges[i], edges[i + 1]).unwrap();
                edges[i] = g;
                edges[i + 1] = h;
            }
        }
        let shuffled = EdgePath::from_edges(sk, edges).unwrap();
        prop_assert_eq!(kg.normalize(&shuffled), nf);
    }

    #[test]
    fn factorize_then_compose(which in 0usize..6, choices in prop::collection::vec(any::<usize>(), 1..8), pick in any::<usize>()) {
        let kg = &kgraphs()[which];
        let Some(p) = path(kg.skeleton(), &choices) else { return Ok(()) };
        let nf = kg.normalize(&p);
        let below = nf.degree().below();
        let m = &below[pick % below.len()];
        let (beta, gamma) = kg.factorize(&nf, m).unwrap();
        prop_assert_eq!(beta.degree(), m);
        prop_assert_eq!(kg.compose(&beta, &gamma).unwrap(), nf);
    }

    #[test]
    fn free_reduction(which in 0usize..6, choices in prop::collection::vec(any::<usize>(), 1..16)) {
        let kg = &kgraphs()[which];
        let sk = kg.skeleton();
        let w = GWord::new(sk, walk(sk, &choices, true)).unwrap();
        let r = w.free_reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert_eq!(gword_degree(sk, &r), gword_degree(sk, &w));
        let back = w.compose(&w.inverse()).unwrap().free_reduce();
        prop_assert!(back.is_empty());
        let neg: Vec<i64> = gword_degree(sk, &w).0.iter().map(|x| -x).collect();
        prop_assert_eq!(gword_degree(sk, &w.inverse()).0, neg);
    }

    #[test]
    fn moves_keep_degree_and_replay(which in 0usize..6, choices in prop::collection::vec(any::<usize>(), 1..8), picks in prop::collection::vec(any::<usize>(), 1..6)) {
        let kg = &kgraphs()[which];
        let sys: &SquareSystem = kg.system();
        let sk = sys.skeleton();
        let w = GWord::new(sk, walk(sk, &choices, true)).unwrap().free_reduce();
        let d0 = gword_degree(sk, &w);
        let mut cur = w;
        for p in picks {
            let moves = square_moves(sys, &cur);
            if moves.is_empty() {
                break;
            }
            let (mv, next) = &moves[p % moves.len()];
            let applied = kgraph_core::groupoid::apply_move(sys, &cur, mv);
            prop_assert_eq!(applied.as_ref(), Some(next));
            if let Move::Square { .. } = mv {
                prop_assert_eq!(gword_degree(sk, next), d0.clone());
            }
            cur = next.clone();
        }
    }

    #[test]
    fn canonical_functor_is_a_functor(which in 0usize..6, a in prop::collection::vec(any::<usize>(), 1..5), b in prop::collection::vec(any::<usize>(), 1..5)) {
        let kg = &kgraphs()[which];
        let sk = kg.skeleton();
        let (Some(p), Some(q)) = (path(sk, &a), path(sk, &b)) else { return Ok(()) };
        let Ok(pq) = p.compose(&q) else { return Ok(()) };
        let (x, y, xy) = (kg.normalize(&p), kg.normalize(&q), kg.normalize(&pq));
        let lhs = canonical_functor(&x).compose(&canonical_functor(&y)).unwrap();
        let d = kgraph_core::equal_in_g(kg.system(), &lhs, &canonical_functor(&xy), Default::default());
        prop_assert!(d.is_equal(), "{:?}", d.label());
        let deg: Vec<i64> = xy.degree().coords().iter().map(|&c| c as i64).collect();
        prop_assert_eq!(gword_degree(sk, &lhs).0, deg);
    }
}

#[test]
fn elements_up_to_counts_match_hom() {
    for kg in kgraphs() {
        let bound = Degree::new(vec![2; kg.rank()]);
        let all: Vec<NormalForm> = kg.elements_up_to(&bound).unwrap().collect();
        let mut by_hom = 0;
        for n in bound.below() {
            for u in kg.skeleton().vertices() {
                for v in kg.skeleton().vertices() {
                    by_hom += kg.hom(u, v, &n).unwrap().len();
                }
            }
        }
        assert_eq!(all.len(), by_hom);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}
