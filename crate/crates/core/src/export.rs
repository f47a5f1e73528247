//! Mesh writers. Vertices are written in increasing exact-coordinate order
//! and faces in sorted canonical-cycle order, so output is byte-for-byte
//! reproducible.

use std::fmt::Write;

use crate::realization::{canonical_cycle, SkeletalPolyhedron};

/// Default number of significant digits for mesh coordinates.
pub const DEFAULT_DIGITS: usize = 17;

/// Vertices in sorted order and faces renumbered to match.
fn normalized(poly: &SkeletalPolyhedron) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut order: Vec<usize> = (0..poly.vertices.len()).collect();
    order.sort_by(|&a, &b| poly.vertices[a].cmp(&poly.vertices[b]));
    let mut new_index = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        new_index[v] = k;
    }
    let mut faces: Vec<Vec<usize>> =
        poly.faces.iter().map(|f| canonical_cycle(&f.iter().map(|&v| new_index[v]).collect::<Vec<_>>())).collect();
    faces.sort();
    (order, faces)
}

fn coords(poly: &SkeletalPolyhedron, v: usize, digits: usize) -> String {
    poly.vertices[v].0.iter().map(|c| c.to_decimal(digits)).collect::<Vec<_>>().join(" ")
}

/// OFF text. The counts line lists vertices, edges and faces in that order.
pub fn emit_off(poly: &SkeletalPolyhedron, digits: usize) -> String {
    let (order, faces) = normalized(poly);
    let [f0, f1, f2] = poly.f_vector();
    let mut out = format!("OFF\n{f0} {f1} {f2}\n");
    for &v in &order {
        writeln!(out, "{}", coords(poly, v, digits)).unwrap();
    }
    for f in &faces {
        let idx: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), idx.join(" ")).unwrap();
    }
    out
}

/// Wavefront OBJ text with 1-based indices.
pub fn emit_obj(poly: &SkeletalPolyhedron, digits: usize) -> String {
    let (order, faces) = normalized(poly);
    let mut out = String::new();
    for &v in &order {
        writeln!(out, "v {}", coords(poly, v, digits)).unwrap();
    }
    for f in &faces {
        let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(out, "f {}", idx.join(" ")).unwrap();
    }
    out
}

/// Reads back the counts line of OFF text.
pub fn off_counts(text: &str) -> Option<[usize; 3]> {
    let mut lines = text.lines();
    if lines.next()? != "OFF" {
        return None;
    }
    let nums: Vec<usize> = lines.next()?.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    nums.try_into().ok()
}
