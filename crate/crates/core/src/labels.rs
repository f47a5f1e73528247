//! Reference data for the six Petrie relatives of Gordan's map {5,4}_6.

/// The relatives as `(p, q, r)` in the order dual pairs are usually listed.
pub const GORDAN_RELATIVES: [(usize, usize, usize); 6] =
    [(5, 4, 6), (4, 5, 6), (6, 4, 5), (4, 6, 5), (6, 5, 4), (5, 6, 4)];

/// Conder's census name for a relative of Gordan's map: `R`/`N` for
/// orientable/non-orientable, genus, index, and `*` for the dual.
pub fn census_label(p: usize, q: usize, r: usize) -> Option<&'static str> {
    Some(match (p, q, r) {
        (4, 5, 6) => "R4.2",
        (5, 4, 6) => "R4.2*",
        (4, 6, 5) => "N12.1",
        (6, 4, 5) => "N12.1*",
        (5, 6, 4) => "R9.16",
        (6, 5, 4) => "R9.16*",
        _ => return None,
    })
}

/// Formats `{p,q}_r`.
pub fn type_label(p: usize, q: usize, r: usize) -> String {
    format!("{{{p},{q}}}_{r}")
}

/// Parses `{p,q}_r` (also `p,q,r`).
pub fn parse_type(s: &str) -> Option<(usize, usize, usize)> {
    let cleaned: String = s.chars().map(|c| if c.is_ascii_digit() { c } else { ' ' }).collect();
    let nums: Vec<usize> = cleaned.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    match nums[..] {
        [p, q, r] => Some((p, q, r)),
        _ => None,
    }
}
