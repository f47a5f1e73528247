//! One-parameter families on two concentric icosahedra and their planar
//! members.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use super::search::FoundPolyhedron;
use super::{SkeletalPolyhedron, ValidationError};
use crate::field::FieldScalar;
use crate::linalg::coplanar;
use crate::poly::Poly;
use crate::symmetry::{h3, icosahedron_vertices, standard_configuration, ConfigKind, SymmetryError};

/// A combinatorial template on the 24 points of the two-icosahedra
/// configuration: index `i < 12` is the `i`-th standard icosahedron vertex,
/// index `12 + i` is the same vertex scaled by λ.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationFamily {
    /// `(p, q, r)` of the realized map.
    pub target: (usize, usize, usize),
    pub base_edge: [usize; 2],
    pub faces: Vec<Vec<usize>>,
}

/// Exact analysis of the ratios at which every face of a family is planar.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarityAnalysis {
    /// Number of nonzero 3×3 minors gathered from the face representatives.
    pub minors: usize,
    /// Monic gcd of all minors, coefficients from the constant term up.
    pub common_factor: Vec<FieldScalar>,
    /// All minors vanish identically: every member is planar.
    pub identically_planar: bool,
    /// Distinct real roots of the common factor with λ > 0, λ ≠ 1 (Sturm count).
    pub admissible_real_roots: usize,
    /// Those roots that lie in Q(√5), each an exact zero of every minor.
    pub planar_lambdas: Vec<FieldScalar>,
    /// Admissible real roots outside Q(√5), approximately.
    pub irrational_roots: Vec<f64>,
    /// Diameter ratios (larger orbit over smaller), i.e. max(λ, 1/λ).
    pub ratios: Vec<FieldScalar>,
}

type PolyVec = [Poly; 3];

fn det3(m: [&PolyVec; 3]) -> Poly {
    let term = |i: usize, j: usize, k: usize| &(&m[0][i] * &m[1][j]) * &m[2][k];
    let pos = &(&term(0, 1, 2) + &term(1, 2, 0)) + &term(2, 0, 1);
    let neg = &(&term(2, 1, 0) + &term(1, 0, 2)) + &term(0, 2, 1);
    &pos - &neg
}

impl RealizationFamily {
    pub fn from_found(found: &FoundPolyhedron, target: (usize, usize, usize)) -> Self {
        Self { target, base_edge: found.base_edge, faces: found.polyhedron.faces.clone() }
    }

    /// The family member at ratio λ.
    pub fn instantiate(&self, lambda: &FieldScalar) -> Result<SkeletalPolyhedron, SymmetryError> {
        let config = standard_configuration(ConfigKind::TwoIcosahedra, Some(lambda.clone()))?;
        Ok(SkeletalPolyhedron::from_faces(config.points(), self.faces.clone(), Arc::new(h3().clone())))
    }

    /// One face from each symmetry orbit.
    pub fn face_representatives(&self) -> Result<Vec<Vec<usize>>, ValidationError> {
        let sample = self.instantiate(&FieldScalar::integer(2)).expect("2 is an admissible ratio");
        Ok(sample.face_orbits()?.iter().map(|o| self.faces[o[0]].clone()).collect())
    }

    /// All faces are planar at λ, checked exactly.
    pub fn is_planar_at(&self, lambda: &FieldScalar) -> Result<bool, SymmetryError> {
        let poly = self.instantiate(lambda)?;
        Ok(poly.faces.iter().all(|f| coplanar(&f.iter().map(|&v| poly.vertices[v].clone()).collect::<Vec<_>>())))
    }

    /// Coordinates of template point `i` as polynomials in λ.
    fn symbolic_point(i: usize) -> PolyVec {
        let base = &icosahedron_vertices()[i % 12];
        std::array::from_fn(|k| {
            if i < 12 {
                Poly::constant(base.0[k].clone())
            } else {
                Poly::linear(base.0[k].clone())
            }
        })
    }

    /// The 3×3 minors of the edge-difference matrix of each face
    /// representative, as polynomials in λ.
    pub fn planarity_minors(&self) -> Result<Vec<Poly>, ValidationError> {
        let mut minors = Vec::new();
        for face in self.face_representatives()? {
            let pts: Vec<PolyVec> = face.iter().map(|&v| Self::symbolic_point(v)).collect();
            let diffs: Vec<PolyVec> =
                pts[1..].iter().map(|p| std::array::from_fn(|k| &p[k] - &pts[0][k])).collect();
            for i in 0..diffs.len() {
                for j in i + 1..diffs.len() {
                    for k in j + 1..diffs.len() {
                        let d = det3([&diffs[i], &diffs[j], &diffs[k]]);
                        if !d.is_zero() {
                            minors.push(d);
                        }
                    }
                }
            }
        }
        Ok(minors)
    }

    pub fn planarity(&self) -> Result<PlanarityAnalysis, ValidationError> {
        let minors = self.planarity_minors()?;
        let one = FieldScalar::one();
        if minors.is_empty() {
            return Ok(PlanarityAnalysis {
                minors: 0,
                common_factor: Vec::new(),
                identically_planar: true,
                admissible_real_roots: 0,
                planar_lambdas: Vec::new(),
                irrational_roots: Vec::new(),
                ratios: Vec::new(),
            });
        }
        let common = minors.iter().skip(1).fold(minors[0].monic(), |g, m| g.gcd(m));

        let mut admissible = 0;
        let mut planar_lambdas = Vec::new();
        let mut irrational_roots = Vec::new();
        if common.degree().unwrap_or(0) > 0 {
            let bound = common.root_bound();
            admissible = common.count_roots_in(&FieldScalar::zero(), &bound);
            if common.eval(&one).is_zero() {
                admissible -= 1;
            }
            planar_lambdas = common
                .field_roots()
                .into_iter()
                .filter(|l| l.is_positive() && *l != one)
                .filter(|l| minors.iter().all(|m| m.eval(l).is_zero()))
                .collect();
            irrational_roots = common
                .real_roots_approx()
                .into_iter()
                .filter(|&x| x > 0.0 && (x - 1.0).abs() > 1e-9)
                .filter(|&x| planar_lambdas.iter().all(|l| (l.to_f64() - x).abs() > 1e-9))
                .collect();
        }
        let mut ratios: Vec<FieldScalar> = planar_lambdas
            .iter()
            .map(|l| if l.cmp(&one) == Ordering::Less { l.inv().unwrap() } else { l.clone() })
            .collect();
        ratios.sort();
        ratios.dedup();
        Ok(PlanarityAnalysis {
            minors: minors.len(),
            common_factor: common.coeffs().to_vec(),
            identically_planar: false,
            admissible_real_roots: admissible,
            planar_lambdas,
            irrational_roots,
            ratios,
        })
    }

    /// Diameter ratios (≥ 1) at which every face is planar.
    pub fn planarity_ratios(&self) -> Result<Vec<FieldScalar>, ValidationError> {
        Ok(self.planarity()?.ratios)
    }
}
