//! Three-dimensional exact vectors and matrices over Q(√5).

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::field::FieldScalar;

/// A point or direction in E³ with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Vec3(pub [FieldScalar; 3]);

impl Vec3 {
    pub fn new(x: FieldScalar, y: FieldScalar, z: FieldScalar) -> Self {
        Self([x, y, z])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn x(&self) -> &FieldScalar {
        &self.0[0]
    }

    pub fn y(&self) -> &FieldScalar {
        &self.0[1]
    }

    pub fn z(&self) -> &FieldScalar {
        &self.0[2]
    }

    pub fn dot(&self, other: &Vec3) -> FieldScalar {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        Vec3::new(a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    }

    pub fn norm2(&self) -> FieldScalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &FieldScalar) -> Vec3 {
        Vec3(self.0.clone().map(|c| &c * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldScalar::is_zero)
    }

    /// True iff `other = c·self` for some real `c > 0`.
    pub fn same_direction(&self, other: &Vec3) -> bool {
        !self.is_zero() && !other.is_zero() && self.cross(other).is_zero() && self.dot(other).is_positive()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.0[0].to_f64(), self.0[1].to_f64(), self.0[2].to_f64()]
    }
}

impl Add<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2])
    }
}

impl Sub<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.clone().map(|c| -c))
    }
}

/// A 3×3 matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3(pub [[FieldScalar; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Self::diagonal(FieldScalar::one())
    }

    pub fn diagonal(d: FieldScalar) -> Self {
        let z = FieldScalar::zero;
        Mat3([[d.clone(), z(), z()], [z(), d.clone(), z()], [z(), z(), d]])
    }

    pub fn from_rows(rows: [Vec3; 3]) -> Self {
        Mat3(rows.map(|r| r.0))
    }

    /// Reflection in the plane through the origin with normal `n`.
    pub fn reflection(n: &Vec3) -> Self {
        let nn = n.norm2();
        let two_over = (FieldScalar::integer(2) / nn).clone();
        let mut m = Self::identity();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] -= &(&two_over * &(&n.0[i] * &n.0[j]));
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i].clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| {
            self.0[i].iter().zip(&v.0).map(|(a, b)| a * b).sum()
        }))
    }

    pub fn det(&self) -> FieldScalar {
        let m = &self.0;
        &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn is_orthogonal(&self) -> bool {
        self * &self.transpose() == Self::identity()
    }
}

impl Mul<&Mat3> for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum())
        }))
    }
}

/// Exact rank of a list of row vectors (Gaussian elimination over Q(√5)).
pub fn rank(rows: &[Vec3]) -> usize {
    let mut m: Vec<[FieldScalar; 3]> = rows.iter().map(|r| r.0.clone()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..3 {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// True iff all points lie in one affine plane.
pub fn coplanar(points: &[Vec3]) -> bool {
    match points.split_first() {
        None => true,
        Some((_, rest)) if rest.len() < 3 => true,
        Some((base, rest)) => {
            let diffs: Vec<Vec3> = rest.iter().map(|p| p - base).collect();
            rank(&diffs) <= 2
        }
    }
}

/// Arithmetic mean of a nonempty point list.
pub fn centroid(points: &[Vec3]) -> Vec3 {
    assert!(!points.is_empty());
    let sum = points.iter().fold(Vec3::zero(), |acc, p| &acc + p);
    sum.scale(&FieldScalar::integer(points.len() as i64).inv().unwrap())
}
