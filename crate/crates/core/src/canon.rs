//! Canonical codes and automorphism counts of arrangement maps.
//!
//! A rooted traversal relabels darts in BFS discovery order, visiting
//! `sigma(d)` before `alpha(d)` from every dart `d`. The traversal's code lists,
//! for each dart in label order, the label of `alpha(d)` followed by the label
//! of `sigma(d)`. The canonical code is the lexicographically smallest code over
//! every root dart and both orientations (`sigma` and `sigma^-1`); the number of
//! rooted traversals attaining it is the order of the automorphism group,
//! reflections included.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::map::{invert, validate, CombinatorialMap, Dart, MapError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("canonical code must start with `PC1:n=`")]
    BadPrefix,
    #[error("malformed canonical code: {0}")]
    Malformed(String),
    #[error("code describes an invalid map: {0}")]
    InvalidMap(#[from] MapError),
    #[error("code announces {announced} circles but the map has {actual}")]
    CircleCount { announced: usize, actual: usize },
}

/// Isomorphism-invariant serialization of an arrangement.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: u8,
    code: Box<[u8]>,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn num_darts(&self) -> usize {
        self.code.len() / 2
    }

    pub fn num_crossings(&self) -> usize {
        self.code.len() / 8
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.code
    }

    /// The map in canonical labeling (not re-validated).
    pub fn decode_map(&self) -> CombinatorialMap {
        let m = self.num_darts();
        let mut sigma = Vec::with_capacity(m);
        let mut alpha = Vec::with_capacity(m);
        for pair in self.code.chunks_exact(2) {
            alpha.push(pair[0] as Dart);
            sigma.push(pair[1] as Dart);
        }
        CombinatorialMap::new(sigma, alpha)
    }

    /// Decodes and validates the arrangement described by this code.
    pub fn to_arrangement(&self) -> Result<Arrangement, CodeError> {
        let arr = validate(self.decode_map())?;
        if arr.n() != self.n() {
            return Err(CodeError::CircleCount { announced: self.n(), actual: arr.n() });
        }
        Ok(arr)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PC1:n={}:", self.n)?;
        for (i, x) in self.code.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CanonicalCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s.trim().strip_prefix("PC1:n=").ok_or(CodeError::BadPrefix)?;
        let (n, body) = rest.split_once(':').ok_or_else(|| CodeError::Malformed("missing code body".into()))?;
        let n: u8 = n.parse().map_err(|_| CodeError::Malformed(format!("bad circle count `{n}`")))?;
        let code = body
            .split('.')
            .map(|t| t.parse::<u8>().map_err(|_| CodeError::Malformed(format!("bad label `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if code.is_empty() || code.len() % 8 != 0 {
            return Err(CodeError::Malformed(format!("{} labels is not a multiple of 8", code.len())));
        }
        let m = code.len() / 2;
        if code.iter().any(|&x| x as usize >= m) {
            return Err(CodeError::Malformed("label out of range".into()));
        }
        Ok(CanonicalCode { n, code: code.into_boxed_slice() })
    }
}

struct Scratch {
    label: Vec<u16>,
    order: Vec<u32>,
    cur: Vec<u8>,
    best: Vec<u8>,
}

thread_local! {
    static SCRATCH: RefCell<Scratch> = RefCell::new(Scratch {
        label: Vec::new(),
        order: Vec::new(),
        cur: Vec::new(),
        best: Vec::new(),
    });
}

const UNSEEN: u16 = u16::MAX;

/// Runs one rooted traversal. With `bound` set, stops as soon as the code is
/// known to be larger and reports `Greater`; `Less`/`Equal` compare the full
/// code against the bound. `cur` receives the code.
fn traverse(
    sigma: &[Dart],
    alpha: &[Dart],
    root: Dart,
    bound: Option<&[u8]>,
    label: &mut [u16],
    order: &mut [u32],
    cur: &mut [u8],
) -> Ordering {
    let m = sigma.len();
    label.fill(UNSEEN);
    label[root as usize] = 0;
    order[0] = root;
    let mut next: u16 = 1;
    let mut state = if bound.is_some() { Ordering::Equal } else { Ordering::Less };
    for i in 0..m {
        let d = order[i] as usize;
        let s = sigma[d] as usize;
        if label[s] == UNSEEN {
            label[s] = next;
            order[next as usize] = s as u32;
            next += 1;
        }
        let a = alpha[d] as usize;
        if label[a] == UNSEEN {
            label[a] = next;
            order[next as usize] = a as u32;
            next += 1;
        }
        let pa = label[a] as u8;
        let ps = label[s] as u8;
        cur[2 * i] = pa;
        cur[2 * i + 1] = ps;
        if state == Ordering::Equal {
            let b = bound.unwrap();
            match (pa, ps).cmp(&(b[2 * i], b[2 * i + 1])) {
                Ordering::Greater => return Ordering::Greater,
                Ordering::Less => state = Ordering::Less,
                Ordering::Equal => {}
            }
        }
    }
    state
}

/// Minimal rooted code over both orientations and the number of rooted
/// traversals attaining it.
fn minimal_code(map: &CombinatorialMap) -> (Vec<u8>, usize) {
    let m = map.num_darts();
    let sigma = map.sigma_slice();
    let alpha = map.alpha_slice();
    let sigma_inv = invert(sigma);
    SCRATCH.with(|cell| {
        let mut sc = cell.borrow_mut();
        let Scratch { label, order, cur, best } = &mut *sc;
        label.resize(m, UNSEEN);
        order.resize(m, 0);
        cur.resize(2 * m, 0);
        best.clear();
        let mut count = 0usize;
        for rot in [sigma, &sigma_inv[..]] {
            for root in 0..m as Dart {
                let bound = if best.is_empty() { None } else { Some(&best[..]) };
                match traverse(rot, alpha, root, bound, label, order, cur) {
                    Ordering::Less => {
                        best.clear();
                        best.extend_from_slice(cur);
                        count = 1;
                    }
                    Ordering::Equal => count += 1,
                    Ordering::Greater => {}
                }
            }
        }
        (best.clone(), count)
    })
}

/// Canonical code of an arrangement: equal iff the arrangements are isomorphic.
pub fn canonical_code(arr: &Arrangement) -> CanonicalCode {
    code_of_map(arr.map(), arr.n())
}

/// Canonical code of a map already known to describe an `n`-circle arrangement.
pub fn code_of_map(map: &CombinatorialMap, n: usize) -> CanonicalCode {
    let (code, _) = minimal_code(map);
    CanonicalCode { n: n as u8, code: code.into_boxed_slice() }
}

/// Order of the automorphism group of the embedded map, reflections included.
pub fn automorphism_order(arr: &Arrangement) -> usize {
    minimal_code(arr.map()).1
}

/// Canonical code together with the automorphism group order.
pub fn code_and_symmetry(arr: &Arrangement) -> (CanonicalCode, usize) {
    let (code, count) = minimal_code(arr.map());
    (CanonicalCode { n: arr.n() as u8, code: code.into_boxed_slice() }, count)
}

/// Code of the traversal rooted at `root` with the given orientation; used by
/// tests as an independent reference.
pub fn rooted_code(map: &CombinatorialMap, root: Dart, mirrored: bool) -> Vec<u8> {
    let m = map.num_darts();
    let sigma = if mirrored { invert(map.sigma_slice()) } else { map.sigma_slice().to_vec() };
    let mut label = vec![UNSEEN; m];
    let mut order = vec![0; m];
    let mut cur = vec![0; 2 * m];
    traverse(&sigma, map.alpha_slice(), root, None, &mut label, &mut order, &mut cur);
    cur
}
