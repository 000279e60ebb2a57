use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * self.get(src, j);
            self.data[dst * self.cols + j] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = q * self.get(i, src);
            self.data[i * self.cols + dst] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Diagonal of the Smith normal form: `d₁ | d₂ | … | d_rank`, all positive,
/// followed by zeros up to `min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero invariant factors.
    pub fn factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }
}

/// Reduces `m` in place to Smith form; returns the column transform `V`
/// with `U·M·V = D` for some unimodular `U`.
fn reduce(m: &mut IntMatrix) -> (IntMatrix, usize) {
    let (rows, cols) = (m.rows, m.cols);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = m.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t).div_floor(m.get(t, t));
                m.sub_row(i, t, &q);
                dirty |= !m.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j).div_floor(m.get(t, t));
                m.sub_col(j, t, &q);
                v.sub_col(j, t, &q);
                dirty |= !m.get(t, j).is_zero();
            }
            if !dirty {
                // divisibility: fold a bad row into the pivot row and retry
                let p = m.get(t, t).clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        m.sub_row(t, i, &BigInt::from(-1));
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                let x = m.get(i, t);
                if !x.is_zero() && x.abs() < m.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                let x = m.get(t, j);
                if !x.is_zero() && x.abs() < m.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            m.swap_rows(t, best.0);
            m.swap_cols(t, best.1);
            v.swap_cols(t, best.1);
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
        }
        t += 1;
    }
    (v, t)
}

/// Smith normal form of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut work = m.clone();
    let (_, rank) = reduce(&mut work);
    SmithForm {
        diagonal: (0..m.rows.min(m.cols)).map(|i| work.get(i, i).clone()).collect(),
        rank,
    }
}

/// The row lattice of an integer matrix, with a membership test.
#[derive(Clone, Debug)]
pub struct RowLattice {
    v: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl RowLattice {
    pub fn new(m: &IntMatrix) -> Self {
        let mut work = m.clone();
        let (v, rank) = reduce(&mut work);
        RowLattice {
            v,
            diagonal: (0..rank).map(|i| work.get(i, i).clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.v.rows
    }

    /// Whether `x` is an integer combination of the rows.
    pub fn contains(&self, x: &[i64]) -> bool {
        assert_eq!(x.len(), self.dim(), "vector length");
        // x ∈ rowspace(M) iff x·V ∈ rowspace(D)
        (0..self.dim()).all(|j| {
            let y: BigInt = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| BigInt::from(xi) * self.v.get(i, j))
                .sum();
            match self.diagonal.get(j) {
                Some(d) => y.is_multiple_of(d),
                None => y.is_zero(),
            }
        })
    }
}

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⨁ ℤ/tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// The abelian group presented by the rows of `m` as relations on its
    /// columns.
    pub fn of_relations(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        AbelianInvariants {
            free_rank: m.cols - snf.rank,
            torsion: snf.factors().iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}
