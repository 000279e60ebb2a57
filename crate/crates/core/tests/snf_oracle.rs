//! Smith normal form against determinantal divisors: `d₁⋯d_k` is the gcd of
//! the k×k minors.

use kgraph_core::{smith_normal_form, AbelianInvariants, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all k×k minors.
fn determinantal_divisor(m: &[Vec<i64>], cols: usize, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_determinantal_divisors((cols, rows) in matrix()) {
        let snf = smith_normal_form(&IntMatrix::from_rows(cols, &rows));
        let f = snf.factors();
        let mut prod = BigInt::one();
        for k in 1..=rows.len().min(cols) {
            let dk = determinantal_divisor(&rows, cols, k);
            if k <= snf.rank {
                prod *= &f[k - 1];
                prop_assert_eq!(&prod, &dk);
            } else {
                prop_assert!(dk.is_zero());
            }
        }
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn transpose_has_same_invariants((cols, rows) in matrix()) {
        let m = IntMatrix::from_rows(cols, &rows);
        let (a, b) = (smith_normal_form(&m), smith_normal_form(&m.transpose()));
        prop_assert_eq!(a.factors(), b.factors());
    }
}

#[test]
fn known_groups() {
    let z2 = AbelianInvariants::of_relations(&IntMatrix::from_rows(2, &[vec![0, 0]]));
    assert_eq!(z2.to_string(), "Z^2");
    let m = IntMatrix::from_rows(3, &[vec![2, 0, 0], vec![0, 4, 0]]);
    assert_eq!(AbelianInvariants::of_relations(&m).to_string(), "Z x Z/2 x Z/4");
    let m = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]);
    assert_eq!(AbelianInvariants::of_relations(&m).to_string(), "Z/6");
    let m = IntMatrix::from_rows(1, &[vec![1]]);
    assert!(AbelianInvariants::of_relations(&m).is_trivial());
}
