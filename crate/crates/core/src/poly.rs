//! Univariate polynomials over Q(√5): Euclidean gcd, Sturm root counting and
//! exact recovery of roots lying in the field.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::FieldScalar;

/// Coefficients from the constant term upwards; never has a zero leading
/// coefficient (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<FieldScalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<FieldScalar>) -> Self {
        while coeffs.last().is_some_and(FieldScalar::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: FieldScalar) -> Self {
        Self::new(vec![c])
    }

    /// `c·x`.
    pub fn linear(c: FieldScalar) -> Self {
        Self::new(vec![FieldScalar::zero(), c])
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldScalar> {
        self.0.last()
    }

    pub fn eval(&self, x: &FieldScalar) -> FieldScalar {
        self.0.iter().rev().fold(FieldScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, s: &FieldScalar) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn conjugate(&self) -> Poly {
        Poly::new(self.0.iter().map(FieldScalar::conjugate).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &FieldScalar::integer(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.leading().expect("polynomial division by zero").inv().unwrap();
        let dd = d.degree().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![FieldScalar::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &dl;
            for (i, dc) in d.0.iter().enumerate() {
                let delta = &c * dc;
                rem[k + i] -= &delta;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(FieldScalar::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero iff both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors.
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sign of the polynomial at `x`.
    pub fn sign_at(&self, x: &FieldScalar) -> Ordering {
        self.eval(x).signum()
    }

    /// Sturm chain of the square-free part.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let p0 = self.square_free();
        let mut chain = vec![p0.clone(), p0.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(-&r);
        }
        chain.pop();
        chain
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &FieldScalar, hi: &FieldScalar) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        variations(&chain, lo).saturating_sub(variations(&chain, hi))
    }

    /// A bound `B` with every real root in `[-B, B]`.
    pub fn root_bound(&self) -> FieldScalar {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let max_ratio = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| c.abs() / lead.clone())
            .max()
            .unwrap_or_else(FieldScalar::zero);
        FieldScalar::rational(BigRational::from_integer((max_ratio + FieldScalar::one()).floor() + 1))
    }

    /// Approximations of the distinct real roots, isolated exactly by Sturm
    /// bisection down to width `2^-60` relative to the root bound.
    pub fn real_roots_approx(&self) -> Vec<f64> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let chain = self.sturm_chain();
        let b = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-&b, b.clone(), 0u32)];
        let half = FieldScalar::from_ratios(1, 2, 0, 1);
        while let Some((lo, hi, depth)) = stack.pop() {
            let n = variations(&chain, &lo).saturating_sub(variations(&chain, &hi));
            if n == 0 {
                continue;
            }
            if n == 1 && depth >= 64 {
                out.push(((&lo + &hi) * half.clone()).to_f64());
                continue;
            }
            let mid = (&lo + &hi) * half.clone();
            stack.push((mid.clone(), hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// All real roots lying in Q(√5), each confirmed by exact evaluation.
    ///
    /// If α = a + b√5 is a root then its conjugate is a root of the conjugate
    /// polynomial; pairing numeric roots of both recovers candidates for a and
    /// b, which are rationalized and then checked exactly.
    pub fn field_roots(&self) -> Vec<FieldScalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let xs = self.real_roots_approx();
        let ys = self.conjugate().real_roots_approx();
        let rt5 = 5f64.sqrt();
        let mut found: Vec<FieldScalar> = Vec::new();
        for x in &xs {
            for y in &ys {
                let (a, b) = ((x + y) / 2.0, (x - y) / (2.0 * rt5));
                let (Some(a), Some(b)) = (approx_rational(a), approx_rational(b)) else {
                    continue;
                };
                let candidate = FieldScalar::new(a, b);
                if self.eval(&candidate).is_zero() && !found.contains(&candidate) {
                    found.push(candidate);
                }
            }
        }
        found.sort();
        found
    }
}

fn variations(chain: &[Poly], x: &FieldScalar) -> usize {
    let signs: Vec<Ordering> =
        chain.iter().map(|p| p.sign_at(x)).filter(|s| *s != Ordering::Equal).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Best rational approximation with denominator at most 10^6 that agrees
/// with `x` to 1e-9 (relative for large magnitudes).
fn approx_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-9 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        (h0, h1) = (h1, ai * h1 + h0);
        (k0, k1) = (k1, ai * k1 + k0);
        if k1 > 1_000_000 {
            return None;
        }
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let z = FieldScalar::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldScalar::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

/// Exact sign of a polynomial's leading coefficient times `x^deg` as `x → +∞`.
pub fn sign_at_infinity(p: &Poly) -> Ordering {
    p.leading().map_or(Ordering::Equal, FieldScalar::signum)
}
