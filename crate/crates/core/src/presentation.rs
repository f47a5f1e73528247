//! Coset enumeration for the groups of the maps `{p,q}_r` and conversion of
//! the regular action into a flag system.
//!
//! The group is generated by three involutions `ρ0, ρ1, ρ2` subject to
//! `(ρ0ρ1)^p = (ρ1ρ2)^q = (ρ0ρ2)^2 = (ρ0ρ1ρ2)^r = 1`. Enumeration is over the
//! trivial subgroup, so cosets are group elements and `ρi` acts by right
//! multiplication.

use std::collections::VecDeque;

use thiserror::Error;

use crate::flagmap::{FlagError, FlagSystem};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("p, q and r must all be at least 2 (got {0}, {1}, {2})")]
    BadParameters(usize, usize, usize),
    #[error("max_cosets must be at least 1")]
    ZeroBound,
    #[error("coset enumeration exceeded {0} cosets")]
    Overflow(usize),
    #[error("presentation collapses: {0}")]
    Collapse(String),
    #[error(transparent)]
    Flag(#[from] FlagError),
}

/// `{p,q}_r`: Coxeter relations of `[p,q]` plus `(ρ0ρ1ρ2)^r = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Presentation {
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self, PresentationError> {
        if p < 2 || q < 2 || r < 2 {
            return Err(PresentationError::BadParameters(p, q, r));
        }
        Ok(Self { p, q, r })
    }

    /// Relators as words in generator indices. Each generator is its own
    /// inverse.
    pub fn relators(&self) -> Vec<Vec<usize>> {
        let power = |w: &[usize], k: usize| w.repeat(k);
        vec![
            vec![0, 0],
            vec![1, 1],
            vec![2, 2],
            power(&[0, 1], self.p),
            power(&[1, 2], self.q),
            power(&[0, 2], 2),
            power(&[0, 1, 2], self.r),
        ]
    }
}

/// A complete coset table: `action[c][g]` is the coset `c·ρg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    action: Vec<[usize; 3]>,
    /// Number of cosets defined during enumeration, including ones later
    /// found to coincide.
    pub defined: usize,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.action.len()
    }

    pub fn is_empty(&self) -> bool {
        self.action.is_empty()
    }

    pub fn act(&self, coset: usize, generator: usize) -> usize {
        self.action[coset][generator]
    }

    /// Applies a word to a coset.
    pub fn trace(&self, coset: usize, word: &[usize]) -> usize {
        word.iter().fold(coset, |c, &g| self.action[c][g])
    }
}

const UNDEF: usize = usize::MAX;

struct Enumerator {
    table: Vec<[usize; 3]>,
    forward: Vec<usize>,
    max: usize,
    queue: VecDeque<usize>,
}

impl Enumerator {
    fn live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        let mut x = c;
        while self.forward[x] != root {
            let next = self.forward[x];
            self.forward[x] = root;
            x = next;
        }
        root
    }

    fn define(&mut self, c: usize, g: usize) -> Result<(), PresentationError> {
        if self.table.len() >= self.max {
            return Err(PresentationError::Overflow(self.max));
        }
        let d = self.table.len();
        self.table.push([UNDEF; 3]);
        self.forward.push(d);
        self.table[c][g] = d;
        self.table[d][g] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.forward[drop] = keep;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for g in 0..3 {
                let f = self.table[e][g];
                if f == UNDEF {
                    continue;
                }
                if self.table[f][g] == e {
                    self.table[f][g] = UNDEF;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][g] != UNDEF {
                    let t = self.table[e1][g];
                    self.merge(f1, t);
                } else if self.table[f1][g] != UNDEF {
                    let t = self.table[f1][g];
                    self.merge(e1, t);
                } else {
                    self.table[e1][g] = f1;
                    self.table[f1][g] = e1;
                }
            }
        }
    }

    /// Scans `word` from coset `c` in both directions, defining new cosets
    /// until the relator closes.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), PresentationError> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][word[i]] != UNDEF {
                f = self.table[f][word[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][word[j as usize]] != UNDEF {
                b = self.table[b][word[j as usize]];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let g = word[i];
                self.table[f][g] = b;
                self.table[b][g] = f;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup (HLT strategy with
/// coincidence processing). Coset numbering of the result is breadth-first
/// from the identity with generator order ρ0, ρ1, ρ2.
pub fn enumerate(pres: &Presentation, max_cosets: usize) -> Result<CosetTable, PresentationError> {
    if max_cosets == 0 {
        return Err(PresentationError::ZeroBound);
    }
    let relators = pres.relators();
    let mut en = Enumerator {
        table: vec![[UNDEF; 3]],
        forward: vec![0],
        max: max_cosets,
        queue: VecDeque::new(),
    };
    let mut c = 0;
    while c < en.table.len() {
        for rel in &relators {
            if !en.live(c) {
                break;
            }
            en.scan_and_fill(c, rel)?;
        }
        if en.live(c) {
            for g in 0..3 {
                if en.table[c][g] == UNDEF {
                    en.define(c, g)?;
                }
            }
        }
        c += 1;
    }

    // Standardize: breadth-first renumbering of the live cosets.
    let defined = en.table.len();
    let mut number = vec![UNDEF; defined];
    let mut order = vec![0];
    number[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for g in 0..3 {
            let y = en.table[x][g];
            debug_assert!(y != UNDEF && en.live(y));
            if number[y] == UNDEF {
                number[y] = order.len();
                order.push(y);
            }
        }
    }
    let action = order.iter().map(|&x| en.table[x].map(|y| number[y])).collect();
    let table = CosetTable { action, defined };
    debug_assert!(relators.iter().all(|w| (0..table.len()).all(|c| table.trace(c, w) == c)));
    Ok(table)
}

/// Flags are group elements; `s_i` is right multiplication by `ρi`.
pub fn to_flag_system(table: &CosetTable) -> Result<FlagSystem, PresentationError> {
    for g in 0..3 {
        if (0..table.len()).any(|c| table.act(c, g) == c) {
            return Err(PresentationError::Collapse(format!("generator ρ{g} acts trivially")));
        }
    }
    if (0..table.len()).any(|c| table.trace(c, &[0, 2]) == c) {
        return Err(PresentationError::Collapse("ρ0 = ρ2".to_string()));
    }
    let perm = |g: usize| (0..table.len()).map(|c| table.act(c, g)).collect::<Vec<_>>();
    Ok(FlagSystem::new(perm(0), perm(1), perm(2))?)
}

/// Enumerates `{p,q}_r` and returns its map.
pub fn build_map(p: usize, q: usize, r: usize, max_cosets: usize) -> Result<FlagSystem, PresentationError> {
    let pres = Presentation::new(p, q, r)?;
    to_flag_system(&enumerate(&pres, max_cosets)?)
}

/// Length of the Petrie polygons of a map, when uniform.
pub fn petrie_length(map: &FlagSystem) -> Option<usize> {
    map.petrie_length()
}
