//! 4x4 matrices and vectors over [`CycloReal`].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::scalar::{CycloField, CycloReal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vec4(pub [CycloReal; 4]);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mat4 {
    /// Row-major entries.
    rows: [[CycloReal; 4]; 4],
}

impl Vec4 {
    pub fn new(e: [CycloReal; 4]) -> Self {
        Vec4(e)
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Vec4(std::array::from_fn(|_| CycloReal::zero_in(field)))
    }

    /// `i`-th standard basis vector.
    pub fn basis(field: &Arc<CycloField>, i: usize) -> Self {
        Vec4(std::array::from_fn(|j| {
            CycloReal::ratio_in(field, i64::from(i == j), 1)
        }))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.0[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(CycloReal::is_zero)
    }

    pub fn dot(&self, o: &Vec4) -> CycloReal {
        let mut acc = &self.0[0] * &o.0[0];
        for i in 1..4 {
            acc = acc + &self.0[i] * &o.0[i];
        }
        acc
    }

    pub fn scale(&self, s: &CycloReal) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn signs(&self) -> [i8; 4] {
        std::array::from_fn(|i| self.0[i].sign())
    }

    pub fn to_f64(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.0[i].to_f64())
    }

    /// True if `self = λ·o` for some exact `λ > 0`.
    pub fn positively_proportional(&self, o: &Vec4) -> bool {
        let Some(p) = (0..4).find(|&i| !o.0[i].is_zero()) else {
            return false;
        };
        let lambda = &self.0[p] / &o.0[p];
        lambda.sign() > 0 && *self == o.scale(&lambda)
    }
}

impl Index<usize> for Vec4 {
    type Output = CycloReal;
    fn index(&self, i: usize) -> &CycloReal {
        &self.0[i]
    }
}

impl Add for &Vec4 {
    type Output = Vec4;
    fn add(self, o: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Vec4 {
    type Output = Vec4;
    fn sub(self, o: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl Mat4 {
    pub fn from_rows(rows: [[CycloReal; 4]; 4]) -> Self {
        Mat4 { rows }
    }

    pub fn from_cols(cols: [Vec4; 4]) -> Self {
        Mat4 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i].clone())),
        }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> CycloReal) -> Self {
        Mat4 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn identity(field: &Arc<CycloField>) -> Self {
        Self::from_fn(|i, j| CycloReal::ratio_in(field, i64::from(i == j), 1))
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Self::from_fn(|_, _| CycloReal::zero_in(field))
    }

    pub fn diag(d: [CycloReal; 4]) -> Self {
        let field = d[0].field().clone();
        Self::from_fn(|i, j| {
            if i == j {
                d[i].clone()
            } else {
                CycloReal::zero_in(&field)
            }
        })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.rows[0][0].field()
    }

    pub fn row(&self, i: usize) -> Vec4 {
        Vec4(self.rows[i].clone())
    }

    pub fn col(&self, j: usize) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.rows[i][j].clone()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn scale(&self, s: &CycloReal) -> Self {
        Self::from_fn(|i, j| &self.rows[i][j] * s)
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.row(i).dot(v)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::identity(self.field());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn trace(&self) -> CycloReal {
        &(&self.rows[0][0] + &self.rows[1][1]) + &(&self.rows[2][2] + &self.rows[3][3])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(CycloReal::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field())
    }

    /// Coefficients `[c0, c1, c2, c3, 1]` of `det(t·Id - self)`, lowest first,
    /// by Faddeev-LeVerrier.
    pub fn char_poly(&self) -> [CycloReal; 5] {
        let field = self.field().clone();
        let id = Self::identity(&field);
        let mut c: [CycloReal; 5] = std::array::from_fn(|_| CycloReal::zero_in(&field));
        c[4] = CycloReal::ratio_in(&field, 1, 1);
        let mut m = Self::zero(&field);
        for k in 1..=4usize {
            m = &(self * &m) + &id.scale(&c[5 - k]);
            let am = self * &m;
            c[4 - k] = am.trace() * CycloReal::ratio_in(&field, -1, k as i64);
        }
        c
    }

    pub fn det(&self) -> CycloReal {
        let c = self.char_poly();
        // det(-A) = c0, and det(-A) = det(A) in even dimension
        c[0].clone()
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        let mut rank = 0;
        for col in 0..4 {
            let Some(p) = (rank..4).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().expect("nonzero pivot");
            for r in 0..4 {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] * &inv;
                    for c in col..4 {
                        let t = &f * &m[rank][c];
                        m[r][c] = &m[r][c] - &t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let field = self.field().clone();
        let mut a = self.rows.clone();
        let mut b = Self::identity(&field).rows;
        for col in 0..4 {
            let p = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            b.swap(col, p);
            let inv = a[col][col].inv().ok()?;
            for c in 0..4 {
                a[col][c] = &a[col][c] * &inv;
                b[col][c] = &b[col][c] * &inv;
            }
            for r in 0..4 {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..4 {
                        let ta = &f * &a[col][c];
                        a[r][c] = &a[r][c] - &ta;
                        let tb = &f * &b[col][c];
                        b[r][c] = &b[r][c] - &tb;
                    }
                }
            }
        }
        Some(Mat4 { rows: b })
    }

    /// Anti-diagonal entries read from top-right to bottom-left, if every
    /// other entry vanishes.
    pub fn anti_diagonal(&self) -> Option<[CycloReal; 4]> {
        for i in 0..4 {
            for j in 0..4 {
                if i + j != 3 && !self.rows[i][j].is_zero() {
                    return None;
                }
            }
        }
        Some(std::array::from_fn(|i| self.rows[i][3 - i].clone()))
    }

    pub fn to_f64(&self) -> nalgebra::Matrix4<f64> {
        nalgebra::Matrix4::from_fn(|i, j| self.rows[i][j].to_f64())
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = CycloReal;
    fn index(&self, (i, j): (usize, usize)) -> &CycloReal {
        &self.rows[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycloReal {
        &mut self.rows[i][j]
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;
    fn mul(self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| {
            let mut acc = &self.rows[i][0] * &o.rows[0][j];
            for k in 1..4 {
                if !self.rows[i][k].is_zero() && !o.rows[k][j].is_zero() {
                    acc = acc + &self.rows[i][k] * &o.rows[k][j];
                }
            }
            acc
        })
    }
}

impl Add for &Mat4 {
    type Output = Mat4;
    fn add(self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| &self.rows[i][j] + &o.rows[i][j])
    }
}

impl Sub for &Mat4 {
    type Output = Mat4;
    fn sub(self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| &self.rows[i][j] - &o.rows[i][j])
    }
}

impl Neg for &Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        Mat4::from_fn(|i, j| -&self.rows[i][j])
    }
}
