//! Exhaustive search for polyhedra with full icosahedral symmetry on a fixed
//! vertex configuration.
//!
//! 1. Classify vertex pairs up to symmetry (least image is the
//!    representative).
//! 2. Keep pairs whose orbit has the target's edge count and gives a graph of
//!    the target's vertex degree.
//! 3. Enumerate the p-cycles of that graph and group them into orbits.
//! 4. Choose unions of cycle orbits covering every edge exactly twice.
//! 5. Validate and compare the resulting map with the target.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{canonical_cycle, cycle_edges, orbit_partition, simple_cycles, SkeletalPolyhedron};
use crate::flagmap::{FlagSystem, MapInvariants};
use crate::symmetry::{h3, SymmetryGroup, VertexConfiguration};

pub const DEFAULT_CYCLE_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("target map is not equivelar")]
    TargetNotEquivelar,
    #[error("the symmetry group does not preserve the vertex configuration")]
    ConfigurationNotInvariant,
    #[error("edge orbit {edge:?} has {count} {p}-cycles, above the cap of {cap}")]
    TooManyCycles { edge: [usize; 2], p: usize, count: usize, cap: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Upper bound on the number of p-cycles enumerated for one edge orbit.
    pub max_cycles: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { max_cycles: DEFAULT_CYCLE_CAP }
    }
}

/// Counters describing how far candidates got.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchDiagnostics {
    pub segment_classes: usize,
    pub edge_orbits_of_right_size: usize,
    pub regular_graphs: usize,
    pub cycles: usize,
    pub cycle_orbits: usize,
    pub face_selections: usize,
    pub valid_polyhedra: usize,
    pub target_matches: usize,
}

impl SearchDiagnostics {
    fn merge(mut self, o: &SearchDiagnostics) -> Self {
        self.segment_classes += o.segment_classes;
        self.edge_orbits_of_right_size += o.edge_orbits_of_right_size;
        self.regular_graphs += o.regular_graphs;
        self.cycles += o.cycles;
        self.cycle_orbits += o.cycle_orbits;
        self.face_selections += o.face_selections;
        self.valid_polyhedra += o.valid_polyhedra;
        self.target_matches += o.target_matches;
        self
    }
}

/// A realization of the target on the configuration.
#[derive(Clone, Debug)]
pub struct FoundPolyhedron {
    pub polyhedron: SkeletalPolyhedron,
    pub invariants: MapInvariants,
    /// Least image of the edge orbit's base segment.
    pub base_edge: [usize; 2],
    /// Canonical description up to symmetry and, for two icosahedra,
    /// exchange of the orbits; equal keys mean similar polyhedra or members
    /// of the same family.
    pub similarity_key: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub polyhedra: Vec<FoundPolyhedron>,
    pub diagnostics: SearchDiagnostics,
}

/// Least image of a face list over the group (and the orbit swap, if any).
pub(crate) fn similarity_key(faces: &[Vec<usize>], perms: &[Vec<usize>], swap: Option<&[usize]>) -> Vec<Vec<usize>> {
    let image = |perm: &dyn Fn(usize) -> usize| {
        let mut fs: Vec<Vec<usize>> =
            faces.iter().map(|f| canonical_cycle(&f.iter().map(|&v| perm(v)).collect::<Vec<_>>())).collect();
        fs.sort();
        fs
    };
    let mut best: Option<Vec<Vec<usize>>> = None;
    for p in perms {
        let mut candidates = vec![image(&|v| p[v])];
        if let Some(s) = swap {
            candidates.push(image(&|v| s[p[v]]));
        }
        for c in candidates {
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

/// Finds every polyhedron on `config` with full H₃ symmetry, one edge orbit
/// and faces forming symmetry orbits of p-cycles, whose map is isomorphic to
/// `target`. Results are deduplicated up to similarity and sorted by key.
pub fn search(
    config: &VertexConfiguration,
    target: &FlagSystem,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    search_with_group(config, target, options, Arc::new(h3().clone()))
}

pub(crate) fn search_with_group(
    config: &VertexConfiguration,
    target: &FlagSystem,
    options: &SearchOptions,
    group: Arc<SymmetryGroup>,
) -> Result<SearchOutcome, SearchError> {
    let (p, q) = target.equivelar_type().ok_or(SearchError::TargetNotEquivelar)?;
    let [_, target_edges, _] = target.f_vector();
    let points = config.points();
    let n = points.len();
    let perms = group.point_permutations(&points).ok_or(SearchError::ConfigurationNotInvariant)?;
    let swap = config.orbit_swap();

    let pair_image = |g: &[usize], [a, b]: [usize; 2]| {
        let (x, y) = (g[a], g[b]);
        [x.min(y), x.max(y)]
    };
    let mut classes: BTreeSet<[usize; 2]> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            classes.insert(perms.iter().map(|g| pair_image(g, [a, b])).min().unwrap());
        }
    }

    let per_class: Vec<Result<(Vec<FoundPolyhedron>, SearchDiagnostics), SearchError>> = classes
        .par_iter()
        .map(|&base| {
            let mut diag = SearchDiagnostics { segment_classes: 1, ..Default::default() };
            let edges: BTreeSet<[usize; 2]> = perms.iter().map(|g| pair_image(g, base)).collect();
            if edges.len() != target_edges {
                return Ok((Vec::new(), diag));
            }
            diag.edge_orbits_of_right_size = 1;
            let mut adj = vec![Vec::new(); n];
            for &[a, b] in &edges {
                adj[a].push(b);
                adj[b].push(a);
            }
            if adj.iter().any(|nb| nb.len() != q) {
                return Ok((Vec::new(), diag));
            }
            diag.regular_graphs = 1;

            let cycles = simple_cycles(&adj, p);
            if cycles.len() > options.max_cycles {
                return Err(SearchError::TooManyCycles { edge: base, p, count: cycles.len(), cap: options.max_cycles });
            }
            diag.cycles = cycles.len();
            let cycle_index: HashMap<&[usize], usize> =
                cycles.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
            let orbit_id = orbit_partition(cycles.len(), |i| {
                perms
                    .iter()
                    .map(|g| {
                        let img: Vec<usize> = cycles[i].iter().map(|&v| g[v]).collect();
                        cycle_index[canonical_cycle(&img).as_slice()]
                    })
                    .collect()
            });
            let orbit_count = orbit_id.iter().max().map_or(0, |m| m + 1);
            diag.cycle_orbits = orbit_count;
            let mut orbits: Vec<Vec<usize>> = vec![Vec::new(); orbit_count];
            for (i, &o) in orbit_id.iter().enumerate() {
                orbits[o].push(i);
            }

            // Coverage of each edge by each cycle orbit.
            let edge_index: BTreeMap<[usize; 2], usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let coverage: Vec<Vec<u8>> = orbits
                .iter()
                .map(|orbit| {
                    let mut cov = vec![0u8; edges.len()];
                    for &c in orbit {
                        for e in cycle_edges(&cycles[c]) {
                            cov[edge_index[&e]] = cov[edge_index[&e]].saturating_add(1);
                        }
                    }
                    cov
                })
                .collect();
            let selections = exact_double_covers(&coverage);
            diag.face_selections = selections.len();

            let mut found = Vec::new();
            for selection in selections {
                let faces: Vec<Vec<usize>> =
                    selection.iter().flat_map(|&o| orbits[o].iter().map(|&c| cycles[c].clone())).collect();
                let poly = SkeletalPolyhedron {
                    vertices: points.clone(),
                    edges: edges.iter().copied().collect(),
                    faces,
                    symmetry: group.clone(),
                };
                let Ok(invariants) = poly.validate() else { continue };
                diag.valid_polyhedra += 1;
                let Ok((map, _)) = poly.flag_system() else { continue };
                if !map.is_isomorphic(target) {
                    continue;
                }
                diag.target_matches += 1;
                let similarity_key = similarity_key(&poly.faces, &perms, swap.as_deref());
                found.push(FoundPolyhedron { polyhedron: poly, invariants, base_edge: base, similarity_key });
            }
            Ok((found, diag))
        })
        .collect();

    let mut diagnostics = SearchDiagnostics::default();
    let mut by_key: BTreeMap<Vec<Vec<usize>>, FoundPolyhedron> = BTreeMap::new();
    for result in per_class {
        let (found, diag) = result?;
        diagnostics = diagnostics.merge(&diag);
        for f in found {
            by_key.entry(f.similarity_key.clone()).or_insert(f);
        }
    }
    Ok(SearchOutcome { polyhedra: by_key.into_values().collect(), diagnostics })
}

/// All sets of orbits whose coverages sum to exactly 2 on every edge.
fn exact_double_covers(coverage: &[Vec<u8>]) -> Vec<Vec<usize>> {
    fn go(coverage: &[Vec<u8>], start: usize, acc: &mut Vec<u8>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.iter().all(|&c| c == 2) {
            out.push(chosen.clone());
            return;
        }
        for o in start..coverage.len() {
            if coverage[o].iter().zip(acc.iter()).all(|(&c, &a)| a + c <= 2) && coverage[o].iter().any(|&c| c > 0) {
                acc.iter_mut().zip(&coverage[o]).for_each(|(a, &c)| *a += c);
                chosen.push(o);
                go(coverage, o + 1, acc, chosen, out);
                chosen.pop();
                acc.iter_mut().zip(&coverage[o]).for_each(|(a, &c)| *a -= c);
            }
        }
    }
    let mut out = Vec::new();
    let Some(first) = coverage.first() else { return out };
    let mut acc = vec![0u8; first.len()];
    go(coverage, 0, &mut acc, &mut Vec::new(), &mut out);
    out
}
