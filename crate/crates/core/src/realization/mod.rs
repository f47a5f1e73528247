//! Skeletal polyhedra with icosahedral symmetry: validation of the polyhedron
//! axioms, index-2 certificates, and the exhaustive realization search.

mod family;
mod geometry;
mod search;

pub use family::{PlanarityAnalysis, RealizationFamily};
pub use geometry::{
    classify_face_centers, edge_traversal_check, face_shape, CenterClass, FaceOrbitClass, PolygonShape,
    Solid,
};
pub use search::{search, FoundPolyhedron, SearchDiagnostics, SearchError, SearchOptions, SearchOutcome};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::flagmap::{FlagError, FlagIncidence, FlagSystem, MapInvariants};
use crate::linalg::Vec3;
use crate::symmetry::SymmetryGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("vertices {0} and {1} coincide")]
    CoincidentVertices(usize, usize),
    #[error("edge {0} has zero length or an out-of-range endpoint")]
    DegenerateEdge(usize),
    #[error("face {face} uses the segment {{{a}, {b}}}, which is not an edge")]
    FaceSegmentNotAnEdge { face: usize, a: usize, b: usize },
    #[error("face {face} is not a polygon with distinct vertices")]
    BadFace { face: usize },
    #[error("edge {{{a}, {b}}} lies on {count} faces, expected exactly 2")]
    EdgeFaceCount { a: usize, b: usize, count: usize },
    #[error("the edge graph is disconnected")]
    DisconnectedGraph,
    #[error("the vertex-figure at vertex {0} is disconnected")]
    DisconnectedVertexFigure(usize),
    #[error("symmetry {element} does not preserve the {what}")]
    SymmetryBreakage { element: usize, what: &'static str },
    #[error("underlying map: {0}")]
    Map(#[from] FlagError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("the underlying map is not regular")]
    NotRegular,
    #[error("symmetries {0} and {1} induce the same map automorphism")]
    Unfaithful(usize, usize),
    #[error("symmetry {0} does not induce a map automorphism")]
    NotAutomorphism(usize),
    #[error("symmetry group of order {symmetry_order} has index {index} in the automorphism group of order {aut_order}, not 2")]
    NotIndexTwo { aut_order: usize, symmetry_order: usize, index: usize },
}

/// Finite vertex set, edges, and polygonal faces in E³, with a group of
/// isometries that is required to preserve all three.
#[derive(Clone, Debug)]
pub struct SkeletalPolyhedron {
    pub vertices: Vec<Vec3>,
    /// Sorted pairs `a < b`, sorted.
    pub edges: Vec<[usize; 2]>,
    /// Vertex cycles.
    pub faces: Vec<Vec<usize>>,
    pub symmetry: Arc<SymmetryGroup>,
}

/// Rotates a cycle to start at its least vertex and picks the direction with
/// the smaller second entry, so both traversals of a polygon agree.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap_or(0);
    let fwd: Vec<usize> = (0..n).map(|k| cycle[(start + k) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|k| cycle[(start + n - k) % n]).collect();
    fwd.min(bwd)
}

pub(crate) fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = [usize; 2]> + '_ {
    let n = cycle.len();
    (0..n).map(move |i| {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        [a.min(b), a.max(b)]
    })
}

/// Simple cycles of exactly `len` vertices in an undirected graph, each once,
/// in canonical form.
pub(crate) fn simple_cycles(adj: &[Vec<usize>], len: usize) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<usize>], len: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            if adj[last].contains(&start) && path[1] < last {
                out.push(path.clone());
            }
            return;
        }
        for &w in &adj[last] {
            if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                extend(adj, len, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let mut on = vec![false; adj.len()];
    for s in 0..adj.len() {
        let mut path = vec![s];
        on[s] = true;
        extend(adj, len, &mut path, &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// Orbit numbering of items under a set of permutations (given as
/// closures), numbered in order of first appearance.
pub(crate) fn orbit_partition(n: usize, images: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if id[s] != usize::MAX {
            continue;
        }
        id[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in images(x) {
                if id[y] == usize::MAX {
                    id[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    id
}

/// Orbit counts under the full symmetry group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub face_orbits: usize,
    pub vertex_orbit_sizes: Vec<usize>,
    pub face_orbit_sizes: Vec<usize>,
}

/// Face orbits and the symmetry action on vertex/face indices.
#[derive(Clone, Debug)]
pub struct SymmetryAction {
    /// `vertex_perm[g][v]`.
    pub vertex_perm: Vec<Vec<usize>>,
    /// `face_perm[g][f]`.
    pub face_perm: Vec<Vec<usize>>,
}

impl SkeletalPolyhedron {
    /// Builds a polyhedron whose edges are the sides of the given faces.
    pub fn from_faces(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>, symmetry: Arc<SymmetryGroup>) -> Self {
        let edges: BTreeSet<[usize; 2]> = faces.iter().flat_map(|f| cycle_edges(f)).collect();
        Self { vertices, edges: edges.into_iter().collect(), faces, symmetry }
    }

    pub fn f_vector(&self) -> [usize; 3] {
        [self.vertices.len(), self.edges.len(), self.faces.len()]
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The permutations induced by every group element on vertices and faces.
    pub fn symmetry_action(&self) -> Result<SymmetryAction, ValidationError> {
        let vertex_perm = self.symmetry.point_permutations(&self.vertices).ok_or_else(|| {
            let element = self
                .symmetry
                .elements()
                .iter()
                .position(|g| self.vertices.iter().any(|v| !self.vertices.contains(&g.apply(v))))
                .unwrap_or(0);
            ValidationError::SymmetryBreakage { element, what: "vertex set" }
        })?;
        let edge_set: BTreeSet<[usize; 2]> = self.edges.iter().copied().collect();
        let face_index: HashMap<Vec<usize>, usize> =
            self.faces.iter().enumerate().map(|(i, f)| (canonical_cycle(f), i)).collect();
        let mut face_perm = Vec::with_capacity(vertex_perm.len());
        for (g, perm) in vertex_perm.iter().enumerate() {
            if self.edges.iter().any(|&[a, b]| !edge_set.contains(&sorted_pair(perm[a], perm[b]))) {
                return Err(ValidationError::SymmetryBreakage { element: g, what: "edge set" });
            }
            let images: Option<Vec<usize>> = self
                .faces
                .iter()
                .map(|f| {
                    let image: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
                    face_index.get(&canonical_cycle(&image)).copied()
                })
                .collect();
            face_perm.push(images.ok_or(ValidationError::SymmetryBreakage { element: g, what: "face set" })?);
        }
        Ok(SymmetryAction { vertex_perm, face_perm })
    }

    /// The map formed by the vertex-edge-face incidences.
    pub fn flag_system(&self) -> Result<(FlagSystem, Vec<FlagIncidence>), ValidationError> {
        Ok(FlagSystem::from_faces(&self.faces)?)
    }

    /// Checks every polyhedron axiom and the symmetry, then summarizes the
    /// underlying map.
    pub fn validate(&self) -> Result<MapInvariants, ValidationError> {
        let n = self.vertices.len();
        let mut sorted: Vec<(&Vec3, usize)> = self.vertices.iter().zip(0..).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ValidationError::CoincidentVertices(w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
        }
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(ValidationError::DegenerateEdge(i));
            }
        }

        let edge_set: BTreeSet<[usize; 2]> = self.edges.iter().copied().collect();
        let mut count: HashMap<[usize; 2], usize> = HashMap::new();
        for (fi, face) in self.faces.iter().enumerate() {
            let distinct: BTreeSet<usize> = face.iter().copied().collect();
            if face.len() < 3 || distinct.len() != face.len() || face.iter().any(|&v| v >= n) {
                return Err(ValidationError::BadFace { face: fi });
            }
            for e in cycle_edges(face) {
                if !edge_set.contains(&e) {
                    return Err(ValidationError::FaceSegmentNotAnEdge { face: fi, a: e[0], b: e[1] });
                }
                *count.entry(e).or_default() += 1;
            }
        }
        for &e in &self.edges {
            let c = count.get(&e).copied().unwrap_or(0);
            if c != 2 {
                return Err(ValidationError::EdgeFaceCount { a: e[0], b: e[1], count: c });
            }
        }

        let adj = self.adjacency();
        let comp = orbit_partition(n, |v| adj[v].clone());
        if comp.iter().any(|&c| c != 0) {
            return Err(ValidationError::DisconnectedGraph);
        }

        // Vertex-figure at v: neighbours u, w joined when u-v-w are
        // consecutive on a face.
        let mut figure: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for face in &self.faces {
            let len = face.len();
            for i in 0..len {
                let (u, v, w) = (face[(i + len - 1) % len], face[i], face[(i + 1) % len]);
                figure[v].push((u, w));
            }
        }
        for v in 0..n {
            let nbrs = &adj[v];
            let local = |x: usize| nbrs.iter().position(|&y| y == x).unwrap();
            let mut fadj = vec![Vec::new(); nbrs.len()];
            for &(u, w) in &figure[v] {
                fadj[local(u)].push(local(w));
                fadj[local(w)].push(local(u));
            }
            if orbit_partition(nbrs.len(), |i| fadj[i].clone()).iter().any(|&c| c != 0) {
                return Err(ValidationError::DisconnectedVertexFigure(v));
            }
        }

        self.symmetry_action()?;
        let (map, _) = self.flag_system()?;
        Ok(map.invariants())
    }

    pub fn orbit_census(&self) -> Result<OrbitCensus, ValidationError> {
        let action = self.symmetry_action()?;
        let vid = orbit_partition(self.vertices.len(), |v| action.vertex_perm.iter().map(|p| p[v]).collect());
        let edge_index: HashMap<[usize; 2], usize> = self.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let eid = orbit_partition(self.edges.len(), |i| {
            let [a, b] = self.edges[i];
            action.vertex_perm.iter().map(|p| edge_index[&sorted_pair(p[a], p[b])]).collect()
        });
        let fid = orbit_partition(self.faces.len(), |f| action.face_perm.iter().map(|p| p[f]).collect());
        let sizes = |ids: &[usize]| {
            let k = ids.iter().max().map_or(0, |m| m + 1);
            let mut s = vec![0; k];
            ids.iter().for_each(|&i| s[i] += 1);
            s
        };
        let vs = sizes(&vid);
        let fs = sizes(&fid);
        Ok(OrbitCensus {
            vertex_orbits: vs.len(),
            edge_orbits: sizes(&eid).len(),
            face_orbits: fs.len(),
            vertex_orbit_sizes: vs,
            face_orbit_sizes: fs,
        })
    }

    /// Face indices grouped by symmetry orbit, each orbit sorted.
    pub fn face_orbits(&self) -> Result<Vec<Vec<usize>>, ValidationError> {
        let action = self.symmetry_action()?;
        let fid = orbit_partition(self.faces.len(), |f| action.face_perm.iter().map(|p| p[f]).collect());
        let k = fid.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for (f, &i) in fid.iter().enumerate() {
            out[i].push(f);
        }
        Ok(out)
    }

    /// Checks that the symmetry group embeds in the map's automorphism group
    /// with index exactly 2.
    pub fn index_two_certificate(&self) -> Result<IndexTwoCertificate, CertificateError> {
        self.validate()?;
        let action = self.symmetry_action()?;
        let (map, incidence) = self.flag_system()?;
        if !map.is_regular() {
            return Err(CertificateError::NotRegular);
        }
        let aut_order = map.len();
        let flag_of: HashMap<(usize, usize, usize), usize> =
            incidence.iter().enumerate().map(|(x, i)| ((i.face, i.vertex, i.neighbor), x)).collect();

        let mut base_images = Vec::with_capacity(action.vertex_perm.len());
        for (g, (vp, fp)) in action.vertex_perm.iter().zip(&action.face_perm).enumerate() {
            let induced: Vec<usize> =
                incidence.iter().map(|i| flag_of[&(fp[i.face], vp[i.vertex], vp[i.neighbor])]).collect();
            let commutes = (0..map.len()).all(|x| (0..3).all(|s| induced[map.s(s)[x]] == map.s(s)[induced[x]]));
            if !commutes {
                return Err(CertificateError::NotAutomorphism(g));
            }
            base_images.push(induced[0]);
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (g, &img) in base_images.iter().enumerate() {
            if let Some(&h) = seen.get(&img) {
                return Err(CertificateError::Unfaithful(h, g));
            }
            seen.insert(img, g);
        }
        // Homomorphism: the automorphism induced by g∘h carries the base flag
        // where g's automorphism carries h's base image.
        let perm_index: HashMap<&[usize], usize> =
            action.vertex_perm.iter().enumerate().map(|(g, p)| (p.as_slice(), g)).collect();
        let autos: Vec<Vec<usize>> =
            base_images.iter().map(|&img| map.transport(&map, 0, img).expect("regular map")).collect();
        for (g, pg) in action.vertex_perm.iter().enumerate() {
            for (h, ph) in action.vertex_perm.iter().enumerate() {
                let composed: Vec<usize> = ph.iter().map(|&v| pg[v]).collect();
                let gh = perm_index[composed.as_slice()];
                if base_images[gh] != autos[g][base_images[h]] {
                    return Err(CertificateError::NotAutomorphism(gh));
                }
            }
        }

        let symmetry_order = self.symmetry.order();
        let index = aut_order / symmetry_order;
        if index != 2 || aut_order % symmetry_order != 0 {
            return Err(CertificateError::NotIndexTwo { aut_order, symmetry_order, index });
        }
        Ok(IndexTwoCertificate { aut_order, symmetry_order, base_flag_images: base_images })
    }
}

fn sorted_pair(a: usize, b: usize) -> [usize; 2] {
    [a.min(b), a.max(b)]
}

/// Witness that the geometric symmetry group is an index-2 subgroup of the
/// map's automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexTwoCertificate {
    pub aut_order: usize,
    pub symmetry_order: usize,
    /// For each symmetry (in group order), the image of flag 0 under the
    /// automorphism it induces; distinct entries make the embedding injective.
    pub base_flag_images: Vec<usize>,
}
