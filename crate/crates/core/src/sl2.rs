//! The monodromy matrix of a cusp, the involution matrix of a symmetric
//! structure and the admissible torsion translations.
//!
//! All arithmetic is exact `i128` with overflow reported as [`Error::Overflow`].

use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

use crate::cycle::{validate_cusp, CycleWord, SymmetricStructure};
use crate::error::{Error, Result};

/// A 2x2 integer matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2Z(pub [[i128; 2]; 2]);

impl Mat2Z {
    pub const IDENTITY: Mat2Z = Mat2Z([[1, 0], [0, 1]]);

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Mat2Z([[a, b], [c, d]])
    }

    /// The factor `[[0, -1], [1, e]]` contributed by one curve.
    pub fn companion(e: i64) -> Self {
        Mat2Z::new(0, -1, 1, e as i128)
    }

    pub fn det(&self) -> Result<i128> {
        let [[a, b], [c, d]] = self.0;
        a.checked_mul(d)
            .zip(b.checked_mul(c))
            .and_then(|(x, y)| x.checked_sub(y))
            .ok_or(Error::Overflow)
    }

    pub fn trace(&self) -> Result<i128> {
        self.0[0][0]
            .checked_add(self.0[1][1])
            .ok_or(Error::Overflow)
    }

    pub fn mul(&self, rhs: &Mat2Z) -> Result<Mat2Z> {
        let mut out = [[0i128; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let x = self.0[i][0].checked_mul(rhs.0[0][j]);
                let y = self.0[i][1].checked_mul(rhs.0[1][j]);
                *cell = x
                    .zip(y)
                    .and_then(|(x, y)| x.checked_add(y))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(Mat2Z(out))
    }

    pub fn apply(&self, v: LatticeVec) -> Result<LatticeVec> {
        let row = |r: [i128; 2]| {
            r[0].checked_mul(v.x)
                .zip(r[1].checked_mul(v.y))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(Error::Overflow)
        };
        Ok(LatticeVec::new(row(self.0[0])?, row(self.0[1])?))
    }

    /// Inverse of a matrix with determinant `+1` or `-1`.
    pub fn inverse(&self) -> Result<Mat2Z> {
        let det = self.det()?;
        if det != 1 && det != -1 {
            return Err(Error::BadDeterminant(det));
        }
        let [[a, b], [c, d]] = self.0;
        let adj = Mat2Z::new(
            d,
            b.checked_neg().ok_or(Error::Overflow)?,
            c.checked_neg().ok_or(Error::Overflow)?,
            a,
        );
        Ok(if det == 1 { adj } else { -adj })
    }

    /// Entries reduced into `{0, 1}`.
    pub fn mod2(&self) -> [[u8; 2]; 2] {
        self.0.map(|r| r.map(|x| x.rem_euclid(2) as u8))
    }
}

impl Neg for Mat2Z {
    type Output = Mat2Z;
    fn neg(self) -> Mat2Z {
        Mat2Z(self.0.map(|r| r.map(|x| -x)))
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// A vector of `N` in the basis `(v0, v1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub x: i128,
    pub y: i128,
}

impl LatticeVec {
    pub fn new(x: i128, y: i128) -> Self {
        LatticeVec { x, y }
    }

    pub fn scale_sub(self, k: i128, other: LatticeVec) -> Result<LatticeVec> {
        let f = |a: i128, b: i128| {
            a.checked_mul(k)
                .and_then(|p| p.checked_sub(b))
                .ok_or(Error::Overflow)
        };
        Ok(LatticeVec::new(f(self.x, other.x)?, f(self.y, other.y)?))
    }

    pub fn mod2(self) -> Mod2Vec {
        Mod2Vec(self.x.rem_euclid(2) as u8, self.y.rem_euclid(2) as u8)
    }
}

/// An element of `(Z/2)^2`, coordinates in `(v0, v1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod2Vec(pub u8, pub u8);

impl Mod2Vec {
    pub const ALL: [Mod2Vec; 4] = [Mod2Vec(0, 0), Mod2Vec(0, 1), Mod2Vec(1, 0), Mod2Vec(1, 1)];

    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }
}

impl fmt::Display for Mod2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Product of the companion factors of `c` read from index `start`.
pub fn matrix_of_cycle(c: &CycleWord, start: usize) -> Result<Mat2Z> {
    validate_cusp(c).into_result()?;
    let n = c.len();
    let mut m = Mat2Z::IDENTITY;
    for i in 0..n {
        m = m.mul(&Mat2Z::companion(c.at(start + i)))?;
    }
    Ok(m)
}

pub fn is_hyperbolic(m: &Mat2Z) -> Result<bool> {
    let det = m.det()?;
    if det != 1 {
        return Err(Error::BadDeterminant(det));
    }
    Ok(m.trace()?.abs() > 2)
}

pub fn check_identity_mod2(m: &Mat2Z) -> bool {
    m.mod2() == [[1, 0], [0, 1]]
}

/// `v_0, ..., v_{count-1}` for the word read from `start`: `v_0 = (1,0)`,
/// `v_1 = (0,1)` and `v_{i+1} = e_i v_i - v_{i-1}`, where `e_i` is the
/// `i`-th letter in 1-based reading order (`e_0 = e_n`).
pub fn boundary_lattice_vectors(
    c: &CycleWord,
    start: usize,
    count: usize,
) -> Result<Vec<LatticeVec>> {
    validate_cusp(c).into_result()?;
    let n = c.len();
    let mut v = Vec::with_capacity(count.max(2));
    v.push(LatticeVec::new(1, 0));
    v.push(LatticeVec::new(0, 1));
    for i in 1..count.saturating_sub(1) {
        let e = c.at(start + (i + n - 1) % n) as i128;
        let next = v[i].scale_sub(e, v[i - 1])?;
        v.push(next);
    }
    v.truncate(count.max(2));
    Ok(v)
}

/// Reading start that puts the first fixed entry last, so the word is
/// `(e_1, ..., e_{n/2}, ..., e_1, e_n)` with `e_{n/2}` and `e_n` fixed.
pub fn symmetric_start(s: &SymmetricStructure) -> usize {
    let (f1, _) = s.axis().fixed();
    (f1 + 1) % s.cycle().len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionDatum {
    /// index of the cycle where the symmetric reading starts
    pub start: usize,
    pub a: Mat2Z,
    pub b: Mat2Z,
    /// `e_n`, the fixed entry read last
    pub e_n: i64,
    pub u0_mod2: Mod2Vec,
    pub u_half_mod2: Mod2Vec,
    /// classes of `2t`, coordinates in `(v0, v1)`
    pub t_candidates: Vec<Mod2Vec>,
}

impl InvolutionDatum {
    /// A candidate rewritten in the basis `(v0, u0)`.
    pub fn in_u0_basis(&self, t: Mod2Vec) -> Mod2Vec {
        let half = (self.e_n / 2).rem_euclid(2) as u8;
        Mod2Vec((t.0 + t.1 * half) % 2, t.1)
    }

    /// Every candidate has odd `v0`-coefficient when written over `(v0, u0)`.
    pub fn candidates_have_odd_first_coordinate(&self) -> bool {
        self.t_candidates
            .iter()
            .all(|&t| self.in_u0_basis(t).0 == 1)
    }

    pub fn b_squared_is_identity(&self) -> Result<bool> {
        Ok(self.b.mul(&self.b)? == Mat2Z::IDENTITY)
    }

    /// `B A = A^{-1} B`.
    pub fn dihedral_relation_holds(&self) -> Result<bool> {
        Ok(self.b.mul(&self.a)? == self.a.inverse()?.mul(&self.b)?)
    }
}

pub fn build_involution_datum(s: &SymmetricStructure) -> Result<InvolutionDatum> {
    let c = s.cycle();
    validate_cusp(c).into_result()?;
    let n = c.len();
    if n % 2 == 1 {
        return Err(Error::OddLength(n));
    }
    let start = symmetric_start(s);
    let e_n = c.at(start + n - 1);
    let e_half = c.at(start + n / 2 - 1);
    if e_n % 2 != 0 || e_half % 2 != 0 {
        return Err(Error::NotSymmetric {
            axis: s.axis().axis(),
        });
    }
    let a = matrix_of_cycle(c, start)?;
    let b = Mat2Z::new(1, e_n as i128, 0, -1);
    let v = boundary_lattice_vectors(c, start, n / 2 + 2)?;
    let u0 = LatticeVec::new(-(e_n as i128) / 2, 1);
    let h = n / 2;
    let u_half = v[h].scale_sub(
        e_half as i128 / 2,
        v[h + 1].scale_sub(-1, LatticeVec::new(0, 0))?,
    )?;
    let u0_mod2 = u0.mod2();
    let u_half_mod2 = u_half.mod2();
    let t_candidates = Mod2Vec::ALL
        .into_iter()
        .filter(|&t| !t.is_zero() && t != u0_mod2 && t != u_half_mod2)
        .collect();
    Ok(InvolutionDatum {
        start,
        a,
        b,
        e_n,
        u0_mod2,
        u_half_mod2,
        t_candidates,
    })
}
