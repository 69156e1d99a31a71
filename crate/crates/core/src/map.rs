//! Dart-based combinatorial maps of simple connected pseudocircle arrangements.
//!
//! A crossing of two pseudocircles owns four darts (half-edges leaving the
//! crossing). `sigma` rotates the darts of a crossing counterclockwise and
//! `alpha` pairs the two darts of every pseudo-arc. Faces are the orbits of
//! `phi = sigma . alpha`: the orbit of a dart is the face lying to its right.
//! Walking straight through a crossing (`alpha` followed by `sigma^2`) traces
//! the pseudocircles.

use thiserror::Error;

use crate::arrangement::Arrangement;

/// Index of a dart in a [`CombinatorialMap`].
pub type Dart = u32;

/// Largest supported dart count. Canonical codes store labels in a byte.
pub const MAX_DARTS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("sigma has {sigma} darts but alpha has {alpha}")]
    LengthMismatch { sigma: usize, alpha: usize },
    #[error("map has no darts")]
    Empty,
    #[error("map has {0} darts, at most {MAX_DARTS} are supported")]
    TooLarge(usize),
    #[error("sigma is not a permutation")]
    NotPermutation,
    #[error("crossing at dart {0} does not have degree 4")]
    NotDegree4(Dart),
    #[error("alpha is not a fixed-point-free involution at dart {0}")]
    NotInvolution(Dart),
    #[error("arrangement graph is disconnected")]
    Disconnected,
    #[error("Euler characteristic is {0}, expected 2")]
    NotSpherical(i64),
    #[error("a pseudocircle passes twice through one crossing")]
    SelfCrossing,
    #[error("pseudocircles {0} and {1} cross {2} times")]
    PairCrossesMoreThanTwice(usize, usize, usize),
    #[error("deleting pseudocircle {0} disconnects the arrangement")]
    WouldDisconnect(usize),
    #[error("wiring diagram is not simple: {0}")]
    NotSimpleWiring(String),
}

/// Rotation system of a 4-regular map on the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    sigma: Vec<Dart>,
    alpha: Vec<Dart>,
}

impl CombinatorialMap {
    /// Wraps raw permutations without checking them; use [`validate`] to
    /// obtain an [`Arrangement`].
    pub fn new(sigma: Vec<Dart>, alpha: Vec<Dart>) -> Self {
        CombinatorialMap { sigma, alpha }
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.sigma.len() / 4
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    #[inline]
    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d as usize]
    }

    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d as usize] as usize]
    }

    /// Straight continuation along the pseudocircle through the next crossing.
    #[inline]
    pub fn tau(&self, d: Dart) -> Dart {
        let a = self.alpha[d as usize] as usize;
        self.sigma[self.sigma[a] as usize]
    }

    pub fn sigma_slice(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn alpha_slice(&self) -> &[Dart] {
        &self.alpha
    }

    /// The mirror image: same edges, clockwise rotation.
    pub fn mirrored(&self) -> Self {
        CombinatorialMap { sigma: invert(&self.sigma), alpha: self.alpha.clone() }
    }

    /// Conjugates the map by a dart permutation: dart `d` becomes `perm[d]`.
    pub fn relabeled(&self, perm: &[Dart]) -> Self {
        let m = self.sigma.len();
        let mut sigma = vec![0; m];
        let mut alpha = vec![0; m];
        for d in 0..m {
            sigma[perm[d] as usize] = perm[self.sigma[d] as usize];
            alpha[perm[d] as usize] = perm[self.alpha[d] as usize];
        }
        CombinatorialMap { sigma, alpha }
    }

    /// Partition of the darts into orbits of `f`, each orbit listed in
    /// traversal order starting at its smallest dart.
    pub fn orbits(&self, f: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let m = self.sigma.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start as Dart;
            while !seen[d as usize] {
                seen[d as usize] = true;
                orbit.push(d);
                d = f(d);
            }
            out.push(orbit);
        }
        out
    }

    fn is_connected(&self) -> bool {
        let m = self.sigma.len();
        let mut seen = vec![false; m];
        let mut stack = vec![0 as Dart];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.sigma(d), self.alpha(d)] {
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == m
    }

    /// Structural checks shared by [`validate`]: permutations, degrees,
    /// connectivity and sphericity.
    pub(crate) fn check_structure(&self) -> Result<(), MapError> {
        let m = self.sigma.len();
        if m != self.alpha.len() {
            return Err(MapError::LengthMismatch { sigma: m, alpha: self.alpha.len() });
        }
        if m == 0 {
            return Err(MapError::Empty);
        }
        if m > MAX_DARTS {
            return Err(MapError::TooLarge(m));
        }
        let mut hit = vec![false; m];
        for &s in &self.sigma {
            let s = s as usize;
            if s >= m || hit[s] {
                return Err(MapError::NotPermutation);
            }
            hit[s] = true;
        }
        for d in 0..m as Dart {
            let a = self.alpha[d as usize];
            if a as usize >= m || a == d || self.alpha[a as usize] != d {
                return Err(MapError::NotInvolution(d));
            }
        }
        for d in 0..m as Dart {
            let mut e = d;
            let mut len = 0;
            loop {
                e = self.sigma(e);
                len += 1;
                if e == d || len > 4 {
                    break;
                }
            }
            if len != 4 {
                return Err(MapError::NotDegree4(d));
            }
        }
        if !self.is_connected() {
            return Err(MapError::Disconnected);
        }
        let v = (m / 4) as i64;
        let e = (m / 2) as i64;
        let f = self.orbits(|d| self.phi(d)).len() as i64;
        let chi = v - e + f;
        if chi != 2 {
            return Err(MapError::NotSpherical(chi));
        }
        Ok(())
    }
}

pub(crate) fn invert(p: &[Dart]) -> Vec<Dart> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as Dart;
    }
    inv
}

/// Checks every arrangement invariant and derives circles and property flags.
pub fn validate(map: CombinatorialMap) -> Result<Arrangement, MapError> {
    map.check_structure()?;
    Arrangement::from_checked_map(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Two pseudocircles crossing at crossings 0 and 1. Circle A is carried by
    // darts 0,2,4,6 and circle B by 1,3,5,7.
    fn two_circles() -> CombinatorialMap {
        let sigma = vec![1, 2, 3, 0, 7, 4, 5, 6];
        let alpha = vec![6, 7, 4, 5, 2, 3, 0, 1];
        CombinatorialMap::new(sigma, alpha)
    }

    #[test]
    fn two_circle_map_is_spherical() {
        let arr = validate(two_circles()).unwrap();
        assert_eq!(arr.n(), 2);
        assert_eq!(arr.map().num_crossings(), 2);
        assert_eq!(arr.num_faces(), 4);
    }

    #[test]
    fn rejects_fixed_point_alpha() {
        let mut m = two_circles();
        m.alpha[0] = 0;
        assert_eq!(validate(m).unwrap_err(), MapError::NotInvolution(0));
    }

    #[test]
    fn rejects_wrong_degree() {
        let m = CombinatorialMap::new(vec![1, 0, 3, 2], vec![2, 3, 0, 1]);
        assert!(matches!(validate(m), Err(MapError::NotDegree4(_))));
    }

    #[test]
    fn rejects_length_mismatch() {
        let m = CombinatorialMap::new(vec![1, 2, 3, 0], vec![1, 0]);
        assert!(matches!(validate(m), Err(MapError::LengthMismatch { .. })));
    }

    #[test]
    fn mirror_is_involutive() {
        let m = two_circles();
        assert_eq!(m.mirrored().mirrored(), m);
    }
}
