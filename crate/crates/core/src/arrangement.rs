//! Validated arrangements, their property flags and triple classification.

use std::collections::HashSet;

use crate::map::{CombinatorialMap, Dart, MapError};
use crate::seq::Sequences;

/// Type of the sub-arrangement induced by three pseudocircles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleType {
    /// Pairwise crossing and digon-free: every pair is separated by the third.
    Krupp,
    /// Pairwise crossing with digons.
    NonKrupp,
    /// Exactly two of the three pairs cross.
    Chain,
    /// At most one pair crosses; the triple is not connected.
    DisjointContaining,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFlags {
    pub connected: bool,
    pub intersecting: bool,
    pub digon_free: bool,
    pub cylindrical: bool,
    pub great: bool,
    /// `cell_vector[k]` is the number of faces with `k` crossings on the boundary.
    pub cell_vector: Vec<usize>,
}

impl PropertyFlags {
    /// Number of `k`-cells.
    pub fn cells(&self, k: usize) -> usize {
        self.cell_vector.get(k).copied().unwrap_or(0)
    }
}

/// A validated simple connected arrangement of pseudocircles.
#[derive(Debug, Clone)]
pub struct Arrangement {
    map: CombinatorialMap,
    n: usize,
    /// Forward darts of each circle in traversal order.
    circles: Vec<Vec<Dart>>,
    dart_circle: Vec<u8>,
    /// `true` for darts pointing along the forward traversal of their circle.
    dart_forward: Vec<bool>,
    dart_vertex: Vec<u32>,
    faces: Vec<Vec<Dart>>,
    dart_face: Vec<u32>,
    /// Bit `c` is set when the face lies on the left of circle `c`.
    face_sides: Vec<u64>,
    pair_crossings: Vec<u8>,
    flags: PropertyFlags,
}

impl Arrangement {
    pub(crate) fn from_checked_map(map: CombinatorialMap) -> Result<Self, MapError> {
        let m = map.num_darts();
        let mut dart_circle = vec![u8::MAX; m];
        let mut dart_forward = vec![false; m];
        let mut circles = Vec::new();
        for start in 0..m as Dart {
            if dart_circle[start as usize] != u8::MAX {
                continue;
            }
            let id = circles.len();
            if id >= 64 {
                return Err(MapError::TooLarge(m));
            }
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                if dart_circle[d as usize] != u8::MAX {
                    return Err(MapError::SelfCrossing);
                }
                dart_circle[d as usize] = id as u8;
                dart_forward[d as usize] = true;
                orbit.push(d);
                d = map.tau(d);
                if d == start {
                    break;
                }
            }
            for &d in &orbit {
                let back = map.alpha(d);
                if dart_circle[back as usize] != u8::MAX {
                    return Err(MapError::SelfCrossing);
                }
                dart_circle[back as usize] = id as u8;
            }
            circles.push(orbit);
        }
        let n = circles.len();

        let mut dart_vertex = vec![0u32; m];
        for (v, orbit) in map.orbits(|d| map.sigma(d)).iter().enumerate() {
            for &d in orbit {
                dart_vertex[d as usize] = v as u32;
            }
        }

        let mut pair_crossings = vec![0u8; n * n];
        for d in 0..m as Dart {
            if !dart_forward[d as usize] {
                continue;
            }
            let a = dart_circle[d as usize] as usize;
            let b = dart_circle[map.sigma(d) as usize] as usize;
            if a == b {
                return Err(MapError::SelfCrossing);
            }
            if a < b {
                pair_crossings[a * n + b] += 1;
                pair_crossings[b * n + a] += 1;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let k = pair_crossings[a * n + b];
                if k != 0 && k != 2 {
                    return Err(MapError::PairCrossesMoreThanTwice(a, b, k as usize));
                }
            }
        }

        let faces = map.orbits(|d| map.phi(d));
        let mut dart_face = vec![0u32; m];
        for (f, orbit) in faces.iter().enumerate() {
            for &d in orbit {
                dart_face[d as usize] = f as u32;
            }
        }

        // Side vectors by BFS over the dual graph; crossing an arc of circle c
        // toggles bit c. Face 0 is the reference cell.
        let mut face_sides = vec![0u64; faces.len()];
        let mut seen = vec![false; faces.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        while let Some(f) = queue.pop_front() {
            for &d in &faces[f] {
                let g = dart_face[map.alpha(d) as usize] as usize;
                if !seen[g] {
                    seen[g] = true;
                    face_sides[g] = face_sides[f] ^ (1u64 << dart_circle[d as usize]);
                    queue.push_back(g);
                }
            }
        }
        // Normalise so that bit c means "left of circle c": the face on the
        // right of a forward dart of c is on its right side.
        let mut norm = 0u64;
        for (c, orbit) in circles.iter().enumerate() {
            let f = dart_face[orbit[0] as usize] as usize;
            if face_sides[f] & (1 << c) != 0 {
                norm |= 1 << c;
            }
        }
        for s in &mut face_sides {
            *s ^= norm;
        }

        let mut arr = Arrangement {
            map,
            n,
            circles,
            dart_circle,
            dart_forward,
            dart_vertex,
            faces,
            dart_face,
            face_sides,
            pair_crossings,
            flags: PropertyFlags {
                connected: true,
                intersecting: false,
                digon_free: false,
                cylindrical: false,
                great: false,
                cell_vector: Vec::new(),
            },
        };
        arr.flags = arr.compute_flags();
        Ok(arr)
    }

    fn compute_flags(&self) -> PropertyFlags {
        let n = self.n;
        let intersecting = (0..n).all(|a| (a + 1..n).all(|b| self.crossings_between(a, b) == 2));
        let mut cell_vector = Vec::new();
        for face in &self.faces {
            let k = face.len();
            if cell_vector.len() <= k {
                cell_vector.resize(k + 1, 0);
            }
            cell_vector[k] += 1;
        }
        let digon_free = cell_vector.get(2).copied().unwrap_or(0) == 0;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let sides: HashSet<u64> = self.face_sides.iter().copied().collect();
        let cylindrical = sides.iter().any(|s| sides.contains(&(s ^ full)));
        let great = intersecting && self.all_triples_krupp();
        PropertyFlags { connected: true, intersecting, digon_free, cylindrical, great, cell_vector }
    }

    fn all_triples_krupp(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if self.triple_type(i, j, k) != TripleType::Krupp {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn into_map(self) -> CombinatorialMap {
        self.map
    }

    /// Number of pseudocircles.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_crossings(&self) -> usize {
        self.map.num_crossings()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn flags(&self) -> &PropertyFlags {
        &self.flags
    }

    /// Forward darts of every circle, in traversal order.
    pub fn circles(&self) -> &[Vec<Dart>] {
        &self.circles
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d as usize] as usize
    }

    pub fn circle_of(&self, d: Dart) -> usize {
        self.dart_circle[d as usize] as usize
    }

    pub fn is_forward(&self, d: Dart) -> bool {
        self.dart_forward[d as usize]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.dart_vertex[d as usize] as usize
    }

    /// Side vector of a face (bit `c` set when the face lies left of circle `c`).
    pub fn face_side(&self, f: usize) -> u64 {
        self.face_sides[f]
    }

    pub fn crossings_between(&self, a: usize, b: usize) -> usize {
        self.pair_crossings[a * self.n + b] as usize
    }

    /// Circles bounding a face, one entry per boundary arc.
    pub fn face_circles(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&d| self.circle_of(d)).collect()
    }

    /// Side of circle `c` on which the crossing carrying dart `d` lies.
    /// `d` must not belong to `c`.
    fn vertex_side(&self, d: Dart, c: usize) -> bool {
        self.face_sides[self.face_of(d)] & (1 << c) != 0
    }

    /// Classifies the sub-arrangement induced by three distinct circles.
    pub fn triple_type(&self, i: usize, j: usize, k: usize) -> TripleType {
        assert!(i != j && j != k && i != k, "triple_type needs distinct circles");
        let crossing =
            [(i, j, k), (i, k, j), (j, k, i)].iter().filter(|&&(a, b, _)| self.crossings_between(a, b) == 2).count();
        match crossing {
            3 => {
                let separated =
                    [(i, j, k), (i, k, j), (j, k, i)].iter().all(|&(a, b, c)| self.pair_separated_by(a, b, c));
                if separated {
                    TripleType::Krupp
                } else {
                    TripleType::NonKrupp
                }
            }
            2 => TripleType::Chain,
            _ => TripleType::DisjointContaining,
        }
    }

    /// Whether the two crossings of circles `a` and `b` lie on opposite sides of `c`.
    fn pair_separated_by(&self, a: usize, b: usize, c: usize) -> bool {
        let mut sides = Vec::with_capacity(2);
        for &d in &self.circles[a] {
            if self.circle_of(self.map.sigma(d)) == b {
                sides.push(self.vertex_side(d, c));
            }
        }
        debug_assert_eq!(sides.len(), 2);
        sides[0] != sides[1]
    }

    /// Circle triples bounding triangular faces.
    pub fn triangle_triples(&self) -> Vec<(usize, [usize; 3])> {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.len() == 3)
            .map(|(idx, f)| {
                let mut t = [self.circle_of(f[0]), self.circle_of(f[1]), self.circle_of(f[2])];
                t.sort_unstable();
                (idx, t)
            })
            .collect()
    }

    pub fn is_great(&self) -> bool {
        self.flags.great
    }

    /// The sub-arrangement induced by all circles except `i`.
    pub fn delete_circle(&self, i: usize) -> Result<Arrangement, MapError> {
        assert!(i < self.n, "circle index out of range");
        let seq = Sequences::from_arrangement(self);
        seq.without_circle(i).to_arrangement().map_err(|e| match e {
            MapError::Disconnected | MapError::Empty => MapError::WouldDisconnect(i),
            other => other,
        })
    }

    /// The sub-arrangement induced by the circles in `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Result<Arrangement, MapError> {
        let seq = Sequences::from_arrangement(self);
        seq.restricted(keep).to_arrangement()
    }
}

/// Recomputes property flags of a validated arrangement.
pub fn properties(arr: &Arrangement) -> PropertyFlags {
    arr.flags().clone()
}

/// Classification of a circle triple; see [`Arrangement::triple_type`].
pub fn triple_type(arr: &Arrangement, i: usize, j: usize, k: usize) -> TripleType {
    arr.triple_type(i, j, k)
}

pub fn is_great(arr: &Arrangement) -> bool {
    arr.is_great()
}

pub fn delete_circle(arr: &Arrangement, i: usize) -> Result<Arrangement, MapError> {
    arr.delete_circle(i)
}
