//! Relating a polyhedron to the convex solid spanned by its vertex
//! configuration.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{canonical_cycle, cycle_edges, simple_cycles, SkeletalPolyhedron, ValidationError};
use crate::linalg::{centroid, coplanar, Vec3};
use crate::symmetry::VertexConfiguration;

/// A convex solid on one orbit of points: edges are the shortest chords,
/// faces the edge cycles spanning a supporting plane.
#[derive(Clone, Debug)]
pub struct Solid {
    pub vertices: Vec<Vec3>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<usize>>,
}

impl Solid {
    /// Largest face size searched for.
    const MAX_FACE: usize = 6;

    pub fn from_points(vertices: Vec<Vec3>) -> Self {
        let n = vertices.len();
        let d = |i: usize, j: usize| (&vertices[i] - &vertices[j]).norm2();
        let min = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| d(i, j)).min();
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); n];
        if let Some(min) = min {
            for i in 0..n {
                for j in i + 1..n {
                    if d(i, j) == min {
                        edges.push([i, j]);
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
            }
        }
        let mut faces = Vec::new();
        for len in 3..=Self::MAX_FACE {
            for cycle in simple_cycles(&adj, len) {
                let pts: Vec<Vec3> = cycle.iter().map(|&v| vertices[v].clone()).collect();
                if !coplanar(&pts) {
                    continue;
                }
                let normal = (&pts[1] - &pts[0]).cross(&(&pts[2] - &pts[0]));
                let signs: Vec<_> = (0..n)
                    .filter(|v| !cycle.contains(v))
                    .map(|v| (&vertices[v] - &pts[0]).dot(&normal).signum())
                    .collect();
                if signs.windows(2).all(|w| w[0] == w[1]) && signs.iter().all(|s| s.is_ne()) {
                    faces.push(cycle);
                }
            }
        }
        Self { vertices, edges, faces }
    }

    /// The solid on the first orbit of a configuration. For two icosahedra
    /// both orbits span parallel copies, so the inner one is used.
    pub fn of_configuration(config: &VertexConfiguration) -> Self {
        Self::from_points(config.orbits[0].clone())
    }

    pub fn pentagons(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().filter(|f| f.len() == 5)
    }
}

/// Where a face centroid points, relative to the underlying solid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CenterClass {
    EdgeMidpoint,
    FaceCenter { sides: usize },
    Vertex,
    /// Centroid at the origin.
    Central,
    None,
    /// Faces of one orbit fall into different classes (not expected under
    /// a symmetry group).
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonShape {
    Skew,
    /// Planar, equal sides, concyclic; `star` when the sides are longer than
    /// the shortest chord (pentagram rather than pentagon).
    Regular { star: bool },
    IrregularPlanar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceOrbitClass {
    pub faces: usize,
    pub sides: usize,
    pub center: CenterClass,
    /// Number of distinct solid elements the centroids point at.
    pub targets_hit: usize,
    pub shape: PolygonShape,
}

pub fn face_shape(points: &[Vec3]) -> PolygonShape {
    if !coplanar(points) {
        return PolygonShape::Skew;
    }
    let n = points.len();
    let side = |i: usize| (&points[(i + 1) % n] - &points[i]).norm2();
    let c = centroid(points);
    let r = (&points[0] - &c).norm2();
    let equal_sides = (1..n).all(|i| side(i) == side(0));
    let concyclic = points.iter().all(|p| (p - &c).norm2() == r);
    if !(equal_sides && concyclic) {
        return PolygonShape::IrregularPlanar;
    }
    let min_chord = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (&points[i] - &points[j]).norm2()).min();
    PolygonShape::Regular { star: min_chord.is_some_and(|m| side(0) > m) }
}

fn classify_point(c: &Vec3, solid: &Solid) -> (CenterClass, Option<(u8, usize)>) {
    if c.is_zero() {
        return (CenterClass::Central, None);
    }
    let v = &solid.vertices;
    for (i, e) in solid.edges.iter().enumerate() {
        if c.same_direction(&(&v[e[0]] + &v[e[1]])) {
            return (CenterClass::EdgeMidpoint, Some((1, i)));
        }
    }
    for (i, f) in solid.faces.iter().enumerate() {
        let pts: Vec<Vec3> = f.iter().map(|&k| v[k].clone()).collect();
        if c.same_direction(&centroid(&pts)) {
            return (CenterClass::FaceCenter { sides: f.len() }, Some((2, i)));
        }
    }
    for (i, p) in v.iter().enumerate() {
        if c.same_direction(p) {
            return (CenterClass::Vertex, Some((0, i)));
        }
    }
    (CenterClass::None, None)
}

/// For each face orbit, where its face centroids point relative to the
/// solid underlying the configuration.
pub fn classify_face_centers(
    poly: &SkeletalPolyhedron,
    underlying: &VertexConfiguration,
) -> Result<Vec<FaceOrbitClass>, ValidationError> {
    let solid = Solid::of_configuration(underlying);
    let mut out = Vec::new();
    for orbit in poly.face_orbits()? {
        let mut classes = Vec::new();
        let mut hits = std::collections::BTreeSet::new();
        for &f in &orbit {
            let pts: Vec<Vec3> = poly.faces[f].iter().map(|&v| poly.vertices[v].clone()).collect();
            let (class, hit) = classify_point(&centroid(&pts), &solid);
            classes.push(class);
            hits.extend(hit);
        }
        let center = if classes.windows(2).all(|w| w[0] == w[1]) { classes[0] } else { CenterClass::Mixed };
        let face = &poly.faces[orbit[0]];
        let pts: Vec<Vec3> = face.iter().map(|&v| poly.vertices[v].clone()).collect();
        out.push(FaceOrbitClass {
            faces: orbit.len(),
            sides: face.len(),
            center,
            targets_hit: hits.len(),
            shape: face_shape(&pts),
        });
    }
    Ok(out)
}

/// Every edge of the polyhedron joins two vertices of one pentagonal face of
/// the underlying solid without being a side of that pentagon.
pub fn edge_traversal_check(poly: &SkeletalPolyhedron, underlying: &VertexConfiguration) -> bool {
    let solid = Solid::of_configuration(underlying);
    let index: BTreeMap<&Vec3, usize> = solid.vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let pentagons: Vec<(&Vec<usize>, Vec<[usize; 2]>)> =
        solid.pentagons().map(|f| (f, cycle_edges(&canonical_cycle(f)).collect())).collect();
    if pentagons.is_empty() || poly.edges.is_empty() {
        return false;
    }
    poly.edges.iter().all(|&[a, b]| {
        let (Some(&x), Some(&y)) = (index.get(&poly.vertices[a]), index.get(&poly.vertices[b])) else {
            return false;
        };
        let e = [x.min(y), x.max(y)];
        pentagons.iter().any(|(f, sides)| f.contains(&x) && f.contains(&y) && !sides.contains(&e))
    })
}
