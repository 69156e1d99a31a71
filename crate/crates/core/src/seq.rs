//! Crossing-sequence form of an arrangement: for every pseudocircle the cyclic
//! order of its crossings, plus one orientation bit per crossing. This is the
//! representation the local moves (flips, deletions, gluing) operate on.

use crate::arrangement::Arrangement;
use crate::map::{validate, CombinatorialMap, Dart, MapError};

/// A crossing of circles `a < b`. `left` is set when the forward direction
/// of `b` points to the left of the forward direction of `a`, i.e. the
/// counterclockwise rotation reads `a+, b+, a-, b-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub left: bool,
}

impl Crossing {
    /// Builds a crossing from an ordered pair, where `left` refers to the
    /// forward direction of `second` relative to `first`.
    pub fn oriented(first: usize, second: usize, left: bool) -> Self {
        if first < second {
            Crossing { a: first, b: second, left }
        } else {
            Crossing { a: second, b: first, left: !left }
        }
    }

    pub fn other(&self, c: usize) -> usize {
        if c == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequences {
    /// Cyclic crossing order along each circle (forward direction).
    pub circles: Vec<Vec<usize>>,
    pub crossings: Vec<Crossing>,
}

impl Sequences {
    pub fn from_arrangement(arr: &Arrangement) -> Self {
        let map = arr.map();
        let mut crossings: Vec<Option<Crossing>> = vec![None; map.num_crossings()];
        let circles = arr.circles().iter().map(|orbit| orbit.iter().map(|&d| arr.vertex_of(d)).collect()).collect();
        for (c, orbit) in arr.circles().iter().enumerate() {
            for &d in orbit {
                let v = arr.vertex_of(d);
                let next = map.sigma(d);
                let other = arr.circle_of(next);
                if c < other {
                    crossings[v] = Some(Crossing { a: c, b: other, left: arr.is_forward(next) });
                }
            }
        }
        Sequences { circles, crossings: crossings.into_iter().map(|c| c.expect("crossing")).collect() }
    }

    /// Builds the map: crossing `x` owns darts `4x..4x+4` in counterclockwise
    /// order `a+`, `b?`, `a-`, `b?`.
    pub fn to_map(&self) -> CombinatorialMap {
        let m = 4 * self.crossings.len();
        let mut sigma = vec![0 as Dart; m];
        for x in 0..self.crossings.len() {
            for k in 0..4 {
                sigma[4 * x + k] = (4 * x + (k + 1) % 4) as Dart;
            }
        }
        let mut alpha = vec![0 as Dart; m];
        for (c, seq) in self.circles.iter().enumerate() {
            let k = seq.len();
            for i in 0..k {
                let x = seq[i];
                let y = seq[(i + 1) % k];
                let out = self.dart(x, c, true);
                let back = self.dart(y, c, false);
                alpha[out] = back as Dart;
                alpha[back] = out as Dart;
            }
        }
        CombinatorialMap::new(sigma, alpha)
    }

    fn dart(&self, x: usize, c: usize, forward: bool) -> usize {
        let cr = self.crossings[x];
        let slot = if c == cr.a {
            if forward {
                0
            } else {
                2
            }
        } else if forward == cr.left {
            1
        } else {
            3
        };
        4 * x + slot
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, MapError> {
        if self.crossings.is_empty() || self.circles.iter().any(|c| c.is_empty()) {
            return Err(MapError::Disconnected);
        }
        validate(self.to_map())
    }

    /// Removes circle `i` and every crossing on it; circles above `i` shift down.
    pub fn without_circle(&self, i: usize) -> Sequences {
        let keep: Vec<usize> = (0..self.circles.len()).filter(|&c| c != i).collect();
        self.restricted(&keep)
    }

    /// The sub-arrangement on the circles listed in `keep` (renumbered in that order).
    pub fn restricted(&self, keep: &[usize]) -> Sequences {
        let mut new_id = vec![usize::MAX; self.circles.len()];
        for (k, &c) in keep.iter().enumerate() {
            new_id[c] = k;
        }
        let mut cross_id = vec![usize::MAX; self.crossings.len()];
        let mut crossings = Vec::new();
        for (x, cr) in self.crossings.iter().enumerate() {
            let (na, nb) = (new_id[cr.a], new_id[cr.b]);
            if na != usize::MAX && nb != usize::MAX {
                cross_id[x] = crossings.len();
                let left = if na < nb { cr.left } else { !cr.left };
                crossings.push(Crossing { a: na.min(nb), b: na.max(nb), left });
            }
        }
        let circles = keep
            .iter()
            .map(|&c| self.circles[c].iter().filter(|&&x| cross_id[x] != usize::MAX).map(|&x| cross_id[x]).collect())
            .collect();
        Sequences { circles, crossings }
    }

    /// Drops crossings flagged in `dead` and renumbers the rest.
    pub fn remove_crossings(&self, dead: &[bool]) -> Sequences {
        let mut cross_id = vec![usize::MAX; self.crossings.len()];
        let mut crossings = Vec::new();
        for (x, cr) in self.crossings.iter().enumerate() {
            if !dead[x] {
                cross_id[x] = crossings.len();
                crossings.push(*cr);
            }
        }
        let circles =
            self.circles.iter().map(|seq| seq.iter().filter(|&&x| !dead[x]).map(|&x| cross_id[x]).collect()).collect();
        Sequences { circles, crossings }
    }
}
