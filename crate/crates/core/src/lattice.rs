//! Exact integer linear algebra on small dense matrices.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cycle::{CycleWord, QuotientGraph};
use crate::error::{Error, Result};

/// Dense matrix over `Z`, row-major.
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
            data: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows; every row must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    /// Builds from columns of length `rows`.
    pub fn from_columns<T: Into<BigInt> + Clone>(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column {j}");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone().into());
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

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination. Panics if not square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
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

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Checks every defining property against the input matrix.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let diag_ok = (0..self.s.rows)
            .all(|i| (0..self.s.cols).all(|j| i == j || self.s.get(i, j).is_zero()));
        let d = self.diagonal();
        let chain_ok = d.iter().all(|x| !x.is_negative())
            && d.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    w[1].is_multiple_of(&w[0])
                }
            });
        diag_ok
            && chain_ok
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.u.mul(m).mul(&self.v) == self.s
    }
}

/// Smith normal form. Pivots on the smallest nonzero absolute value, ties
/// broken by row-major position.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| x.abs() < s.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(u, s, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = -(s.get(i, t) / &p);
                if !q.is_zero() {
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = -(s.get(t, j) / &p);
                if !q.is_zero() {
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, s, v)
}

fn finish(u: IntMatrix, s: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { u, s, v }
}

/// A finitely generated abelian group `Z^r x Z/d_1 x ... x Z/d_k`, with
/// `d_1 | d_2 | ...` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z^free_rank` times cyclic groups of the given orders, put in
    /// invariant-factor form.
    pub fn from_orders<T: Into<BigInt> + Clone>(free_rank: usize, orders: &[T]) -> Self {
        let k = orders.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, d) in orders.iter().enumerate() {
            m.set(i, i, d.clone().into());
        }
        let mut g = cokernel(&m);
        g.free_rank += free_rank;
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// `Z^3 x Z/2 x Z/2`; the trivial group is `0`.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(alloc::format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// `Z^rows / (column span of m)`.
pub fn cokernel(m: &IntMatrix) -> FinAbGroup {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    FinAbGroup {
        free_rank: m.rows - rank,
        invariant_factors: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
    }
}

/// The class group of the quotient germ: the lattice spanned by all curves of
/// the resolution modulo the intersection vectors of the four fork curves.
pub fn class_group_of_quotient(g: &QuotientGraph) -> Result<FinAbGroup> {
    let k = g.chain.len();
    if k < 2 {
        return Err(Error::TooShort { len: k, min: 2 });
    }
    if let Some(f) = g.forks.iter().find(|f| f.attached_to >= k) {
        return Err(Error::IndexOutOfRange {
            index: f.attached_to,
            len: k,
        });
    }
    let q = g.intersection_form();
    let cols: Vec<Vec<i64>> = (k..k + 4)
        .map(|j| q.iter().map(|row| row[j]).collect())
        .collect();
    Ok(cokernel(&IntMatrix::from_columns(k + 4, &cols)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Complement {
    pub group: FinAbGroup,
    /// set when no rays were given, so the answer is just `Z^2`
    pub empty_input: bool,
}

/// `N / <v_1, ..., v_p>` for primitive rays `v_i` of `N = Z^2`.
pub fn pi1_complement(rays: &[(i128, i128)]) -> Result<Pi1Complement> {
    for &(x, y) in rays {
        if !x.gcd(&y).is_one() {
            return Err(Error::NonPrimitiveRay(x, y));
        }
    }
    let cols: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|&(x, y)| alloc::vec![x.into(), y.into()])
        .collect();
    Ok(Pi1Complement {
        group: cokernel(&IntMatrix::from_columns(2, &cols)),
        empty_input: rays.is_empty(),
    })
}

/// Rays `v_0, ..., v_{n-1}` of the smooth complete fan whose boundary has
/// self-intersections `-d_i`, normalized to `v_0 = (1,0)`, `v_1 = (0,1)`.
/// `None` if no such fan exists.
pub fn fan_from_cycle(d: &CycleWord) -> Option<Vec<(i128, i128)>> {
    let n = d.len();
    if n < 3 {
        return None;
    }
    let mut v: Vec<(i128, i128)> = alloc::vec![(1, 0), (0, 1)];
    for i in 1..=n {
        let k = d.at(i) as i128;
        let (a, b) = (v[i], v[i - 1]);
        let x = k.checked_mul(a.0)?.checked_sub(b.0)?;
        let y = k.checked_mul(a.1)?.checked_sub(b.1)?;
        v.push((x, y));
    }
    if v[n] != v[0] || v[n + 1] != v[1] {
        return None;
    }
    v.truncate(n);
    let det = |a: (i128, i128), b: (i128, i128)| a.0 * b.1 - a.1 * b.0;
    let unimodular = (0..n).all(|i| det(v[i], v[(i + 1) % n]) == 1);
    let winding = (0..n)
        .filter(|&i| v[i].1 < 0 && v[(i + 1) % n].1 >= 0)
        .count();
    (unimodular && winding == 1).then_some(v)
}
