//! Maps on closed surfaces as flag systems.
//!
//! A map with `n` flags is three fixed-point-free involutions `s0, s1, s2` on
//! `0..n`: `s0` changes the vertex of a flag, `s1` its edge and `s2` its face.
//! Vertices, edges and faces are the orbits of `⟨s1,s2⟩`, `⟨s0,s2⟩` and
//! `⟨s0,s1⟩` respectively.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::labels::census_label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("a map needs at least one flag")]
    Empty,
    #[error("generator s{generator} has {len} entries, expected {expected}")]
    LengthMismatch { generator: usize, len: usize, expected: usize },
    #[error("generator s{generator} is not an involution at flag {flag}")]
    NotInvolution { generator: usize, flag: usize },
    #[error("generator s{generator} fixes flag {flag}")]
    FixedPoint { generator: usize, flag: usize },
    #[error("s0 and s2 do not generate a four-flag edge at flag {flag}")]
    BadEdge { flag: usize },
    #[error("the flag action is not connected")]
    Disconnected,
    #[error("Petrie polygon through flag {flag} has a single edge")]
    DegeneratePetrieFace { flag: usize },
    #[error("face {face} repeats vertex {vertex}")]
    RepeatedVertex { face: usize, vertex: usize },
    #[error("face {face} has fewer than two vertices")]
    ShortFace { face: usize },
    #[error("edge {{{0}, {1}}} lies in {2} face sides, expected exactly 2")]
    EdgeMultiplicity(usize, usize, usize),
}

/// Vertex-edge-face incidence carried by a flag built from face cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlagIncidence {
    pub face: usize,
    pub vertex: usize,
    /// The other endpoint of the flag's edge.
    pub neighbor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagSystem {
    s: [Vec<usize>; 3],
}

impl FlagSystem {
    pub fn new(s0: Vec<usize>, s1: Vec<usize>, s2: Vec<usize>) -> Result<Self, FlagError> {
        let n = s0.len();
        if n == 0 {
            return Err(FlagError::Empty);
        }
        let s = [s0, s1, s2];
        for (g, perm) in s.iter().enumerate() {
            if perm.len() != n {
                return Err(FlagError::LengthMismatch { generator: g, len: perm.len(), expected: n });
            }
            for (x, &y) in perm.iter().enumerate() {
                if y >= n || perm[y] != x {
                    return Err(FlagError::NotInvolution { generator: g, flag: x });
                }
                if y == x {
                    return Err(FlagError::FixedPoint { generator: g, flag: x });
                }
            }
        }
        for x in 0..n {
            let a = s[0][s[2][x]];
            if a != s[2][s[0][x]] || a == x {
                return Err(FlagError::BadEdge { flag: x });
            }
        }
        let map = Self { s };
        if map.orbit_ids(&[0, 1, 2]).1 != 1 {
            return Err(FlagError::Disconnected);
        }
        Ok(map)
    }

    /// Builds the map whose faces are the given vertex cycles. Every edge must
    /// occur in exactly two faces; the vertex labels are arbitrary `usize`s.
    pub fn from_faces(faces: &[Vec<usize>]) -> Result<(Self, Vec<FlagIncidence>), FlagError> {
        // flag index = 2·(start of face + position) + d; the flag sits on the
        // edge (face[i], face[i+1]) at its endpoint face[i + d].
        let mut offsets = Vec::with_capacity(faces.len());
        let mut total = 0;
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 2 {
                return Err(FlagError::ShortFace { face: f });
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(FlagError::RepeatedVertex { face: f, vertex: w[0] });
            }
            offsets.push(total);
            total += face.len();
        }
        let n = 2 * total;
        let mut sides: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (f, face) in faces.iter().enumerate() {
            for i in 0..face.len() {
                let (a, b) = (face[i], face[(i + 1) % face.len()]);
                sides.entry((a.min(b), a.max(b))).or_default().push((f, i));
            }
        }
        if let Some(((a, b), list)) = sides.iter().find(|(_, l)| l.len() != 2) {
            return Err(FlagError::EdgeMultiplicity(*a, *b, list.len()));
        }

        let mut incidence = Vec::with_capacity(n);
        let mut s0 = vec![0; n];
        let mut s1 = vec![0; n];
        let mut s2 = vec![0; n];
        for (f, face) in faces.iter().enumerate() {
            let len = face.len();
            for i in 0..len {
                let (a, b) = (face[i], face[(i + 1) % len]);
                for d in 0..2 {
                    let x = 2 * (offsets[f] + i) + d;
                    let (vertex, neighbor) = if d == 0 { (a, b) } else { (b, a) };
                    incidence.push(FlagIncidence { face: f, vertex, neighbor });
                    s0[x] = x ^ 1;
                    s1[x] = if d == 0 {
                        2 * (offsets[f] + (i + len - 1) % len) + 1
                    } else {
                        2 * (offsets[f] + (i + 1) % len)
                    };
                    let other = sides[&(a.min(b), a.max(b))]
                        .iter()
                        .copied()
                        .find(|&(g, j)| (g, j) != (f, i))
                        .expect("two sides per edge");
                    let d2 = usize::from(faces[other.0][other.1] != vertex);
                    s2[x] = 2 * (offsets[other.0] + other.1) + d2;
                }
            }
        }
        Ok((Self::new(s0, s1, s2)?, incidence))
    }

    pub fn len(&self) -> usize {
        self.s[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The involution `s_i` as an array.
    pub fn s(&self, i: usize) -> &[usize] {
        &self.s[i]
    }

    /// Orbit number of each flag under the generators listed, numbered in
    /// order of first appearance, plus the orbit count.
    pub fn orbit_ids(&self, gens: &[usize]) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut id = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            id[start] = count;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for &g in gens {
                    let y = self.s[g][x];
                    if id[y] == usize::MAX {
                        id[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (id, count)
    }

    pub fn orbits(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let (id, count) = self.orbit_ids(gens);
        let mut out = vec![Vec::new(); count];
        for (x, &k) in id.iter().enumerate() {
            out[k].push(x);
        }
        out
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.orbits(&[1, 2])
    }

    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.orbits(&[0, 2])
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.orbits(&[0, 1])
    }

    pub fn f_vector(&self) -> [usize; 3] {
        [self.orbit_ids(&[1, 2]).1, self.orbit_ids(&[0, 2]).1, self.orbit_ids(&[0, 1]).1]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, f] = self.f_vector();
        v as i64 - e as i64 + f as i64
    }

    /// `(p, q)` when all faces are p-gons and all vertices have degree q.
    pub fn equivelar_type(&self) -> Option<(usize, usize)> {
        let p = uniform_half_size(&self.faces())?;
        let q = uniform_half_size(&self.vertices())?;
        Some((p, q))
    }

    /// Length of the Petrie polygons, when they all have the same length.
    pub fn petrie_length(&self) -> Option<usize> {
        let zig: Vec<usize> = (0..self.len()).map(|x| self.s[0][self.s[2][x]]).collect();
        let tmp = Self { s: [zig, self.s[1].clone(), self.s[2].clone()] };
        uniform_half_size(&tmp.faces())
    }

    /// The flag graph is bipartite.
    pub fn is_orientable(&self) -> bool {
        let n = self.len();
        let mut color = vec![u8::MAX; n];
        color[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for g in 0..3 {
                let y = self.s[g][x];
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    queue.push_back(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
        true
    }

    /// Handles for orientable surfaces, crosscaps otherwise.
    pub fn genus(&self) -> u64 {
        let chi = self.euler_characteristic();
        if self.is_orientable() {
            ((2 - chi) / 2) as u64
        } else {
            (2 - chi) as u64
        }
    }

    pub fn dual(&self) -> Self {
        Self { s: [self.s[2].clone(), self.s[1].clone(), self.s[0].clone()] }
    }

    /// Petrie dual: same vertices and edges, faces replaced by the Petrie
    /// polygons (`s0 ↦ s0·s2`).
    pub fn petrie(&self) -> Result<Self, FlagError> {
        let zig: Vec<usize> = (0..self.len()).map(|x| self.s[0][self.s[2][x]]).collect();
        if let Some(flag) = (0..self.len()).find(|&x| zig[x] == self.s[1][x]) {
            return Err(FlagError::DegeneratePetrieFace { flag });
        }
        Self::new(zig, self.s[1].clone(), self.s[2].clone())
    }

    /// Renames flag `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.len();
        let mut s = [vec![0; n], vec![0; n], vec![0; n]];
        for g in 0..3 {
            for x in 0..n {
                s[g][perm[x]] = perm[self.s[g][x]];
            }
        }
        Self { s }
    }

    /// The unique isomorphism `self → other` sending `from` to `to`, if any,
    /// as a flag map.
    pub fn transport(&self, other: &FlagSystem, from: usize, to: usize) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let mut image = vec![usize::MAX; self.len()];
        image[from] = to;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for g in 0..3 {
                let y = self.s[g][x];
                let z = other.s[g][image[x]];
                if image[y] == usize::MAX {
                    image[y] = z;
                    queue.push_back(y);
                } else if image[y] != z {
                    return None;
                }
            }
        }
        Some(image)
    }

    /// Automorphisms act freely, so the group order is the number of flags
    /// the base flag can be carried to.
    pub fn aut_order(&self) -> usize {
        (0..self.len()).filter(|&t| self.transport(self, 0, t).is_some()).count()
    }

    pub fn is_regular(&self) -> bool {
        (0..self.len()).all(|t| self.transport(self, 0, t).is_some())
    }

    pub fn is_isomorphic(&self, other: &FlagSystem) -> bool {
        self.len() == other.len()
            && self.f_vector() == other.f_vector()
            && (0..other.len()).any(|t| self.transport(other, 0, t).is_some())
    }

    /// Breadth-first relabeling from `start` with generator order s0, s1, s2;
    /// returns the relabeled generator table flattened row by row.
    fn bfs_form(&self, start: usize) -> Vec<usize> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for g in 0..3 {
                let y = self.s[g][x];
                if label[y] == usize::MAX {
                    label[y] = order.len();
                    order.push(y);
                }
            }
        }
        order.iter().flat_map(|&x| (0..3).map(move |g| (g, x))).map(|(g, x)| label[self.s[g][x]]).collect()
    }

    /// Isomorphism-invariant canonical form: the least BFS relabeling over all
    /// starting flags.
    pub fn canonical_form(&self) -> Vec<usize> {
        (0..self.len()).map(|x| self.bfs_form(x)).min().expect("nonempty map")
    }

    pub fn invariants(&self) -> MapInvariants {
        let f_vector = self.f_vector();
        let schlafli = self.equivelar_type();
        let petrie_length = self.petrie_length();
        let aut_order = self.aut_order();
        let label = match (schlafli, petrie_length) {
            (Some((p, q)), Some(r)) => census_label(p, q, r).map(str::to_string),
            _ => None,
        };
        MapInvariants {
            flags: self.len(),
            f_vector,
            euler_characteristic: self.euler_characteristic(),
            schlafli: schlafli.map(|(p, q)| [p, q]),
            type_label: match (schlafli, petrie_length) {
                (Some((p, q)), Some(r)) => format!("{{{p},{q}}}_{r}"),
                (Some((p, q)), None) => format!("{{{p},{q}}}"),
                _ => "non-equivelar".to_string(),
            },
            petrie_length,
            orientable: self.is_orientable(),
            genus: self.genus(),
            aut_order,
            regular: aut_order == self.len(),
            census_label: label,
        }
    }
}

fn uniform_half_size(orbits: &[Vec<usize>]) -> Option<usize> {
    let first = orbits.first()?.len();
    orbits.iter().all(|o| o.len() == first).then_some(first / 2)
}

/// Combinatorial summary of a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapInvariants {
    pub flags: usize,
    pub f_vector: [usize; 3],
    pub euler_characteristic: i64,
    /// `[p, q]`, absent when the map is not equivelar.
    pub schlafli: Option<[usize; 2]>,
    /// `{p,q}_r`, or `non-equivelar`.
    pub type_label: String,
    pub petrie_length: Option<usize>,
    pub orientable: bool,
    pub genus: u64,
    pub aut_order: usize,
    pub regular: bool,
    /// Name of the map in Conder's census, for the Gordan relatives.
    pub census_label: Option<String>,
}

/// One member of a closure under duality and Petrie duality.
#[derive(Clone, Debug)]
pub struct HexadMember {
    /// Operations applied to the seed, left to right (`d` dual, `p` Petrie).
    pub word: String,
    pub map: FlagSystem,
    pub invariants: MapInvariants,
}

/// Closure of `{seed}` under `dual` and `petrie`, deduplicated up to
/// isomorphism, in breadth-first order of discovery.
pub fn hexad(seed: &FlagSystem) -> Result<Vec<HexadMember>, FlagError> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut members: Vec<(String, FlagSystem)> = Vec::new();
    seen.insert(seed.canonical_form(), 0);
    members.push((String::new(), seed.clone()));
    let mut head = 0;
    while head < members.len() {
        let (word, map) = members[head].clone();
        head += 1;
        for (op, next) in [('d', Ok(map.dual())), ('p', map.petrie())] {
            let next = next?;
            let key = next.canonical_form();
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                slot.insert(members.len());
                members.push((format!("{word}{op}"), next));
            }
        }
    }
    Ok(members
        .into_iter()
        .map(|(word, map)| HexadMember { invariants: map.invariants(), word, map })
        .collect())
}
