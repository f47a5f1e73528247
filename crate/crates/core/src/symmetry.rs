//! The full icosahedral group H₃ as exact matrices, orbit machinery, and the
//! standard vertex configurations used by the realization search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldScalar;
use crate::linalg::{Mat3, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("the ratio of the two icosahedra must differ from 1")]
    RatioIsOne,
    #[error("the ratio of the two icosahedra must be positive, got {0}")]
    RatioNotPositive(FieldScalar),
    #[error("configuration `two-icosahedra` needs a ratio")]
    MissingRatio,
    #[error("configuration `{0}` takes no ratio")]
    UnexpectedRatio(ConfigKind),
    #[error("unknown vertex configuration {0:?}")]
    UnknownConfig(String),
}

/// A finite group of exact orthogonal matrices, stored in sorted order.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    elements: Vec<Mat3>,
    generators: Vec<Mat3>,
}

impl SymmetryGroup {
    /// Closes `generators` under multiplication.
    pub fn generated_by(generators: Vec<Mat3>) -> Self {
        let mut seen: BTreeSet<Mat3> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Mat3::identity());
        queue.push_back(Mat3::identity());
        while let Some(m) = queue.pop_front() {
            for g in &generators {
                let next = &m * g;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Self { elements: seen.into_iter().collect(), generators }
    }

    /// Wraps an explicit element list, which must already be a group.
    pub fn from_elements(mut elements: Vec<Mat3>) -> Self {
        elements.sort();
        elements.dedup();
        Self { elements, generators: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.generators
    }

    pub fn index_of(&self, m: &Mat3) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.index_of(m).is_some()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&Mat3::identity()).expect("group contains the identity")
    }

    pub fn rotation_subgroup(&self) -> SymmetryGroup {
        let one = FieldScalar::one();
        Self::from_elements(self.elements.iter().filter(|m| m.det() == one).cloned().collect())
    }

    /// Checks closure, inverses and orthogonality exhaustively.
    pub fn is_closed_orthogonal_group(&self) -> bool {
        self.contains(&Mat3::identity())
            && self.elements.iter().all(|m| m.is_orthogonal() && self.contains(&m.transpose()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&(a * b))))
    }

    /// Sorted, duplicate-free image set of `p`.
    pub fn orbit(&self, p: &Vec3) -> Vec<Vec3> {
        let set: BTreeSet<Vec3> = self.elements.iter().map(|g| g.apply(p)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer(&self, p: &Vec3) -> SymmetryGroup {
        Self::from_elements(self.elements.iter().filter(|g| &g.apply(p) == p).cloned().collect())
    }

    /// For each element, the permutation it induces on `points`, or `None`
    /// if some image leaves the set.
    pub fn point_permutations(&self, points: &[Vec3]) -> Option<Vec<Vec<usize>>> {
        let index: BTreeMap<&Vec3, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        self.elements
            .iter()
            .map(|g| points.iter().map(|p| index.get(&g.apply(p)).copied()).collect())
            .collect()
    }
}

/// The three mirror normals of H₃: consecutive normals meet at π/5 and π/3,
/// the outer two are perpendicular.
pub fn h3_mirror_normals() -> [Vec3; 3] {
    let tau = FieldScalar::golden();
    [
        Vec3::new(1.into(), 0.into(), 0.into()),
        Vec3::new(tau.clone(), 1.into(), &tau - &FieldScalar::one()),
        Vec3::new(0.into(), 1.into(), 0.into()),
    ]
}

/// Builds the full icosahedral group from its three reflection generators.
pub fn generate_h3() -> SymmetryGroup {
    SymmetryGroup::generated_by(h3_mirror_normals().iter().map(Mat3::reflection).collect())
}

/// Shared H₃ instance.
pub fn h3() -> &'static SymmetryGroup {
    static GROUP: OnceLock<SymmetryGroup> = OnceLock::new();
    GROUP.get_or_init(generate_h3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    TwoIcosahedra,
    Dodecahedron,
    Icosidodecahedron,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 3] =
        [ConfigKind::TwoIcosahedra, ConfigKind::Dodecahedron, ConfigKind::Icosidodecahedron];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::TwoIcosahedra => "two-icosahedra",
            ConfigKind::Dodecahedron => "dodecahedron",
            ConfigKind::Icosidodecahedron => "icosidodecahedron",
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigKind {
    type Err = SymmetryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SymmetryError::UnknownConfig(s.to_string()))
    }
}

/// Vertex positions grouped into H₃-orbits.
#[derive(Clone, Debug, Serialize)]
pub struct VertexConfiguration {
    pub kind: ConfigKind,
    /// Circumradius ratio of the second icosahedron to the first.
    pub lambda: Option<FieldScalar>,
    pub orbits: Vec<Vec<Vec3>>,
}

impl VertexConfiguration {
    /// All points, orbit by orbit.
    pub fn points(&self) -> Vec<Vec3> {
        self.orbits.iter().flatten().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Orbit number of the point with global index `i`.
    pub fn orbit_of(&self, mut i: usize) -> usize {
        for (k, o) in self.orbits.iter().enumerate() {
            if i < o.len() {
                return k;
            }
            i -= o.len();
        }
        panic!("point index out of range")
    }

    /// Permutation of point indices exchanging the two icosahedra, which is a
    /// similarity of the configuration at ratio λ with the one at 1/λ.
    pub fn orbit_swap(&self) -> Option<Vec<usize>> {
        if self.kind != ConfigKind::TwoIcosahedra {
            return None;
        }
        let n = self.orbits[0].len();
        Some((0..2 * n).map(|i| (i + n) % (2 * n)).collect())
    }

    pub fn label(&self) -> String {
        match &self.lambda {
            Some(l) => format!("{}(lambda = {})", self.kind, l),
            None => self.kind.to_string(),
        }
    }
}

/// All cyclic permutations of `(x, y, z)` with every sign choice on the
/// nonzero entries.
fn signed_cyclic(coords: [FieldScalar; 3]) -> Vec<Vec3> {
    let mut out = BTreeSet::new();
    for signs in 0..8u8 {
        let c: [FieldScalar; 3] =
            std::array::from_fn(|i| if signs >> i & 1 == 1 { -&coords[i] } else { coords[i].clone() });
        for shift in 0..3 {
            out.insert(Vec3(std::array::from_fn(|i| c[(i + shift) % 3].clone())));
        }
    }
    out.into_iter().collect()
}

/// Regular icosahedron: cyclic permutations of (0, ±1, ±τ).
pub fn icosahedron_vertices() -> Vec<Vec3> {
    signed_cyclic([0.into(), 1.into(), FieldScalar::golden()])
}

/// Regular dodecahedron dual to [`icosahedron_vertices`]: (±1, ±1, ±1) and
/// cyclic permutations of (0, ±τ, ±1/τ).
pub fn dodecahedron_vertices() -> Vec<Vec3> {
    let tau = FieldScalar::golden();
    let mut pts = signed_cyclic([1.into(), 1.into(), 1.into()]);
    pts.extend(signed_cyclic([0.into(), tau.clone(), tau.inv().unwrap()]));
    pts.sort();
    pts.dedup();
    pts
}

/// Icosidodecahedron at the edge midpoints of [`icosahedron_vertices`]:
/// cyclic permutations of (±τ, 0, 0) and (±1/2, ±τ²/2, ±τ/2).
pub fn icosidodecahedron_vertices() -> Vec<Vec3> {
    let tau = FieldScalar::golden();
    let half = FieldScalar::from_ratios(1, 2, 0, 1);
    let mut pts = signed_cyclic([tau.clone(), 0.into(), 0.into()]);
    pts.extend(signed_cyclic([half.clone(), &(&tau * &tau) * &half, &tau * &half]));
    pts.sort();
    pts.dedup();
    pts
}

pub fn standard_configuration(
    kind: ConfigKind,
    lambda: Option<FieldScalar>,
) -> Result<VertexConfiguration, SymmetryError> {
    let orbits = match (kind, &lambda) {
        (ConfigKind::TwoIcosahedra, None) => return Err(SymmetryError::MissingRatio),
        (ConfigKind::TwoIcosahedra, Some(l)) => {
            if !l.is_positive() {
                return Err(SymmetryError::RatioNotPositive(l.clone()));
            }
            if *l == FieldScalar::one() {
                return Err(SymmetryError::RatioIsOne);
            }
            let inner = icosahedron_vertices();
            let outer = inner.iter().map(|p| p.scale(l)).collect();
            vec![inner, outer]
        }
        (_, Some(_)) => return Err(SymmetryError::UnexpectedRatio(kind)),
        (ConfigKind::Dodecahedron, None) => vec![dodecahedron_vertices()],
        (ConfigKind::Icosidodecahedron, None) => vec![icosidodecahedron_vertices()],
    };
    Ok(VertexConfiguration { kind, lambda, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h3_has_order_120_with_central_inversion() {
        let g = generate_h3();
        assert_eq!(g.order(), 120);
        assert!(g.contains(&Mat3::identity()));
        assert!(g.contains(&Mat3::diagonal(FieldScalar::integer(-1))));
        assert_eq!(g.rotation_subgroup().order(), 60);
    }

    #[test]
    fn origin_is_fixed() {
        let g = h3();
        assert_eq!(g.orbit(&Vec3::zero()), vec![Vec3::zero()]);
        assert_eq!(g.stabilizer(&Vec3::zero()).order(), 120);
    }

    #[test]
    fn configuration_sizes() {
        let d = standard_configuration(ConfigKind::Dodecahedron, None).unwrap();
        assert_eq!((d.len(), d.orbits.len()), (20, 1));
        let i = standard_configuration(ConfigKind::Icosidodecahedron, None).unwrap();
        assert_eq!((i.len(), i.orbits.len()), (30, 1));
        let t = standard_configuration(ConfigKind::TwoIcosahedra, Some(2.into())).unwrap();
        assert_eq!(t.orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![12, 12]);
    }

    #[test]
    fn ratio_errors() {
        use ConfigKind::*;
        assert_eq!(standard_configuration(TwoIcosahedra, Some(1.into())).unwrap_err(), SymmetryError::RatioIsOne);
        assert!(matches!(
            standard_configuration(TwoIcosahedra, Some((-2).into())),
            Err(SymmetryError::RatioNotPositive(_))
        ));
        assert!(matches!(
            standard_configuration(TwoIcosahedra, Some(0.into())),
            Err(SymmetryError::RatioNotPositive(_))
        ));
        assert_eq!(standard_configuration(TwoIcosahedra, None).unwrap_err(), SymmetryError::MissingRatio);
        assert!(standard_configuration(Dodecahedron, Some(2.into())).is_err());
    }

    /// Brute-force image set of `p` under every matrix of the group.
    fn images(p: &Vec3) -> BTreeSet<Vec3> {
        h3().elements().iter().map(|g| g.apply(p)).collect()
    }

    #[test]
    fn configurations_are_single_orbits() {
        let tau = FieldScalar::golden();
        let cases = [
            (icosahedron_vertices(), Vec3::new(0.into(), 1.into(), tau.clone())),
            (dodecahedron_vertices(), Vec3::new(1.into(), 1.into(), 1.into())),
            (icosidodecahedron_vertices(), Vec3::new(tau, 0.into(), 0.into())),
        ];
        for (points, rep) in cases {
            let set: BTreeSet<Vec3> = points.iter().cloned().collect();
            assert_eq!(set.len(), points.len());
            assert_eq!(images(&rep), set);
            assert_eq!(h3().orbit(&rep), points);
            assert!(h3().point_permutations(&points).is_some());
        }
    }

    #[test]
    fn every_icosahedral_twelve_orbit_is_the_scaled_standard_one() {
        let rho = FieldScalar::from_ratios(3, 2, 1, 3);
        let scaled: BTreeSet<Vec3> = icosahedron_vertices().iter().map(|p| p.scale(&rho)).collect();
        for p in &scaled {
            assert_eq!(images(p), scaled);
        }
        let two = standard_configuration(ConfigKind::TwoIcosahedra, Some(rho.clone())).unwrap();
        assert_eq!(two.orbits[1].iter().cloned().collect::<BTreeSet<_>>(), scaled);
    }

    #[test]
    fn orbit_sizes_divide_the_group_order() {
        let tau = FieldScalar::golden();
        let pts = [
            Vec3::new(1.into(), 0.into(), 0.into()),
            Vec3::new(1.into(), 2.into(), 0.into()),
            Vec3::new(1.into(), 2.into(), 3.into()),
            Vec3::new(0.into(), 1.into(), tau),
        ];
        let sizes: Vec<usize> = pts.iter().map(|p| h3().orbit(p).len()).collect();
        for (p, &n) in pts.iter().zip(&sizes) {
            assert_eq!(n * h3().stabilizer(p).order(), 120);
        }
        assert_eq!(sizes, vec![30, 60, 120, 12]);
    }

    #[test]
    fn orbit_swap_is_an_involution() {
        let t = standard_configuration(ConfigKind::TwoIcosahedra, Some(3.into())).unwrap();
        let s = t.orbit_swap().unwrap();
        assert!((0..24).all(|i| s[s[i]] == i && t.orbit_of(i) != t.orbit_of(s[i])));
    }
}
