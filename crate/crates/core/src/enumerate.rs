//! Exhaustive generation of arrangement classes.
//!
//! The extension step inserts a new pseudocircle into a parent arrangement as
//! a closed walk through the faces. The walk is built directly in a growing
//! plane map: each crossing subdivides an old edge and each step of the walk
//! is an edge inserted between two corners of one face, so every partial
//! walk is planar and chords inside a revisited face never interleave.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::canon::{canonical_code, code_of_map, CanonicalCode};
use crate::flips::{flip_graph, FlipBudget, FlipError, Moves};
use crate::map::{validate, CombinatorialMap, Dart};
use crate::seq::{Crossing, Sequences};
use crate::wiring::{from_wiring, wiring_words};

/// Which circles the inserted curve must cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMode {
    /// Every old circle exactly twice.
    Intersecting,
    /// Every old circle zero or two times, at least one circle.
    Connected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrClass {
    Connected,
    ConnectedDigonFree,
    ConnectedCylindrical,
    Intersecting,
    IntersectingDigonFree,
    IntersectingCylindrical,
    Great,
}

impl ArrClass {
    pub const ALL: [ArrClass; 7] = [
        ArrClass::Connected,
        ArrClass::ConnectedDigonFree,
        ArrClass::ConnectedCylindrical,
        ArrClass::Intersecting,
        ArrClass::IntersectingDigonFree,
        ArrClass::IntersectingCylindrical,
        ArrClass::Great,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArrClass::Connected => "connected",
            ArrClass::ConnectedDigonFree => "connected-digonfree",
            ArrClass::ConnectedCylindrical => "connected-cylindrical",
            ArrClass::Intersecting => "intersecting",
            ArrClass::IntersectingDigonFree => "intersecting-digonfree",
            ArrClass::IntersectingCylindrical => "intersecting-cylindrical",
            ArrClass::Great => "great",
        }
    }

    /// Whether an arrangement belongs to the class.
    pub fn contains(self, arr: &Arrangement) -> bool {
        let f = arr.flags();
        match self {
            ArrClass::Connected => true,
            ArrClass::ConnectedDigonFree => f.digon_free,
            ArrClass::ConnectedCylindrical => f.cylindrical,
            ArrClass::Intersecting => f.intersecting,
            ArrClass::IntersectingDigonFree => f.intersecting && f.digon_free,
            ArrClass::IntersectingCylindrical => f.intersecting && f.cylindrical,
            ArrClass::Great => f.great,
        }
    }

    fn base(self) -> ArrClass {
        match self {
            ArrClass::Connected | ArrClass::ConnectedDigonFree | ArrClass::ConnectedCylindrical => ArrClass::Connected,
            ArrClass::Great => ArrClass::Great,
            _ => ArrClass::Intersecting,
        }
    }
}

impl fmt::Display for ArrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArrClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ArrClass::ALL.iter().copied().find(|c| c.name() == s).ok_or_else(|| format!("unknown class `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("need at least 2 circles, got {0}")]
    TooFewCircles(usize),
    #[error("class {class} at n={n} is beyond desk scale; pass the long-run flag")]
    NeedsLongRun { n: usize, class: ArrClass },
    #[error("class {class} at n={n} is not supported")]
    Unsupported { n: usize, class: ArrClass },
    #[error("enumeration exceeded its budget after {nodes} nodes")]
    BudgetExceeded { nodes: usize },
}

impl From<FlipError> for EnumError {
    fn from(e: FlipError) -> Self {
        match e {
            FlipError::BudgetExceeded { nodes } => EnumError::BudgetExceeded { nodes },
            FlipError::SeedOutsideClass(_) => unreachable!("seeds are built inside their class"),
        }
    }
}

const NEW: u8 = u8::MAX;

/// A plane map under construction: vertices of degree 2 or 3 appear while
/// the new curve is open.
#[derive(Clone)]
struct Growing {
    sigma: Vec<Dart>,
    alpha: Vec<Dart>,
    circle: Vec<u8>,
    crossed: Vec<u8>,
}

impl Growing {
    fn from_arrangement(arr: &Arrangement) -> Self {
        let map = arr.map();
        let m = map.num_darts();
        Growing {
            sigma: map.sigma_slice().to_vec(),
            alpha: map.alpha_slice().to_vec(),
            circle: (0..m as Dart).map(|d| arr.circle_of(d) as u8).collect(),
            crossed: vec![0; arr.n()],
        }
    }

    fn push(&mut self, circle: u8) -> Dart {
        let d = self.sigma.len() as Dart;
        self.sigma.push(d);
        self.alpha.push(d);
        self.circle.push(circle);
        d
    }

    /// Subdivides the edge of `t`. Returns `(back, ahead)`: the new darts
    /// pointing to the tail and to the head of `t`. `ahead` follows `t` on the
    /// face right of `t`.
    fn split(&mut self, t: Dart) -> (Dart, Dart) {
        let c = self.circle[t as usize];
        let rev = self.alpha[t as usize];
        let back = self.push(c);
        let ahead = self.push(c);
        self.alpha[t as usize] = back;
        self.alpha[back as usize] = t;
        self.alpha[rev as usize] = ahead;
        self.alpha[ahead as usize] = rev;
        self.sigma[back as usize] = ahead;
        self.sigma[ahead as usize] = back;
        self.crossed[c as usize] += 1;
        (back, ahead)
    }

    /// Inserts `h` into the rotation just before corner dart `c`.
    fn insert_before(&mut self, h: Dart, c: Dart) {
        let mut p = c;
        while self.sigma[p as usize] != c {
            p = self.sigma[p as usize];
        }
        self.sigma[p as usize] = h;
        self.sigma[h as usize] = c;
    }

    /// Adds a new-curve edge between corners `from` and `to`. Returns the dart
    /// arriving at the `to` end.
    fn connect(&mut self, from: Dart, to: Dart) -> Dart {
        let a = self.push(NEW);
        let b = self.push(NEW);
        self.alpha[a as usize] = b;
        self.alpha[b as usize] = a;
        self.insert_before(a, from);
        self.insert_before(b, to);
        b
    }

    fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d as usize] as usize]
    }

    fn face(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.phi(start);
        while d != start {
            out.push(d);
            d = self.phi(d);
        }
        out
    }

    fn into_map(self) -> CombinatorialMap {
        CombinatorialMap::new(self.sigma, self.alpha)
    }
}

struct Walker<'a> {
    mode: ExtensionMode,
    /// Circles below this id must not be crossed.
    lowest: u8,
    start_corner: Dart,
    out: &'a mut dyn FnMut(CombinatorialMap),
}

impl Walker<'_> {
    fn can_close(&self, g: &Growing) -> bool {
        match self.mode {
            ExtensionMode::Intersecting => g.crossed.iter().all(|&k| k == 2),
            ExtensionMode::Connected => g.crossed.iter().all(|&k| k != 1),
        }
    }

    fn walk(&mut self, g: &Growing, corner: Dart) {
        let face = g.face(corner);
        if self.can_close(g) && face.contains(&self.start_corner) {
            let mut done = g.clone();
            done.connect(corner, self.start_corner);
            (self.out)(done.into_map());
        }
        for &t in &face {
            let c = g.circle[t as usize];
            if c == NEW || c < self.lowest || g.crossed[c as usize] >= 2 {
                continue;
            }
            let mut next = g.clone();
            let (back, ahead) = next.split(t);
            let arrived = next.connect(corner, ahead);
            debug_assert_eq!(next.sigma[arrived as usize], ahead);
            self.walk(&next, back);
        }
    }
}

/// Every way to add one pseudocircle to `arr` in the given mode, as raw maps
/// (with repetitions). Circle ids of the parent are kept; the new circle
/// gets id `n`.
fn extension_maps(arr: &Arrangement, mode: ExtensionMode, out: &mut dyn FnMut(CombinatorialMap)) {
    let n = arr.n();
    let starts: Vec<usize> = match mode {
        ExtensionMode::Intersecting => vec![0],
        ExtensionMode::Connected => (0..n).collect(),
    };
    for s in starts {
        for &d0 in &arr.circles()[s] {
            let mut g = Growing::from_arrangement(arr);
            let (back, ahead) = g.split(d0);
            // The curve leaves the first crossing into the face right of d0.
            let mut walker = Walker { mode, lowest: s as u8, start_corner: back, out: &mut *out };
            walker.walk(&g, ahead);
        }
    }
}

/// Distinct arrangements on `n + 1` circles whose deletion of the new circle
/// yields `arr`, sorted by canonical code.
pub fn extensions(arr: &Arrangement, mode: ExtensionMode) -> Vec<Arrangement> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    extension_maps(arr, mode, &mut |map| {
        let ext = validate(map).expect("extension produced an invalid map");
        let code = canonical_code(&ext);
        if seen.insert(code.clone()) {
            out.push((code, ext));
        }
    });
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, a)| a).collect()
}

/// Filter applied to extensions; `None` keeps everything without validating.
pub type Keep<'a> = Option<&'a (dyn Fn(&Arrangement) -> bool + Sync)>;

/// Canonical codes of all extensions of `arr` passing `keep`, sorted and
/// duplicate-free.
pub fn extension_codes(arr: &Arrangement, mode: ExtensionMode, keep: Keep<'_>) -> Vec<CanonicalCode> {
    let n_new = arr.n() + 1;
    let mut seen = HashSet::new();
    extension_maps(arr, mode, &mut |map| match keep {
        None => {
            debug_assert!(validate(map.clone()).is_ok());
            seen.insert(code_of_map(&map, n_new));
        }
        Some(f) => {
            let ext = validate(map).expect("extension produced an invalid map");
            if f(&ext) {
                seen.insert(canonical_code(&ext));
            }
        }
    });
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Merges per-parent sorted code lists into one sorted duplicate-free list.
fn merge(parts: Vec<Vec<CanonicalCode>>) -> Vec<CanonicalCode> {
    let mut all: Vec<CanonicalCode> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// Extends every parent and returns the merged codes.
pub fn extend_all(parents: &[CanonicalCode], mode: ExtensionMode, keep: Keep<'_>) -> Vec<CanonicalCode> {
    let parts: Vec<Vec<CanonicalCode>> = parents
        .par_iter()
        .map(|code| {
            let arr = code.to_arrangement().expect("stored code decodes");
            extension_codes(&arr, mode, keep)
        })
        .collect();
    merge(parts)
}

/// The intersecting arrangement of two circles.
pub fn two_circles() -> Arrangement {
    Sequences {
        circles: vec![vec![0, 1], vec![0, 1]],
        crossings: vec![Crossing { a: 0, b: 1, left: true }, Crossing { a: 0, b: 1, left: false }],
    }
    .to_arrangement()
    .expect("two crossing circles")
}

/// The great-pseudocircle arrangement of the cyclic wiring diagram.
pub fn great_seed(n: usize) -> Arrangement {
    let mut word = Vec::new();
    for k in (1..n).rev() {
        word.extend(1..=k);
    }
    from_wiring(n, &word).expect("bubble-sort wiring is simple")
}

/// Codes of every arrangement in `class` by circle-by-circle extension.
/// Classes with a connected base use the connected extension mode.
pub fn enumerate_by_extension(n: usize, class: ArrClass) -> Result<Vec<CanonicalCode>, EnumError> {
    if n < 2 {
        return Err(EnumError::TooFewCircles(n));
    }
    let mode = match class.base() {
        ArrClass::Connected => ExtensionMode::Connected,
        _ => ExtensionMode::Intersecting,
    };
    let mut level = vec![canonical_code(&two_circles())];
    for k in 3..=n {
        if k == n && class != class.base() {
            return Ok(extend_all(&level, mode, Some(&|a: &Arrangement| class.contains(a))));
        }
        level = extend_all(&level, mode, None);
    }
    if n == 2 && !class.contains(&two_circles()) {
        level.clear();
    }
    Ok(level)
}

/// Options for [`enumerate_class_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    /// Allows n=7 intersecting-digonfree and great classes beyond n=7.
    pub long_run: bool,
    pub budget: FlipBudget,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { long_run: false, budget: FlipBudget { max_nodes: 50_000_000, max_time: None } }
    }
}

pub fn enumerate_class(n: usize, class: ArrClass) -> Result<Vec<CanonicalCode>, EnumError> {
    enumerate_class_with(n, class, EnumOptions::default())
}

/// Complete duplicate-free set of canonical codes of `class` on `n` circles,
/// sorted.
///
/// Intersecting classes come from extension; connected classes from the
/// closure of a great seed under triangle and digon flips; great
/// arrangements from wiring diagrams. The n=7 intersecting digon-free class
/// is the triangle-flip closure of a great seed.
pub fn enumerate_class_with(n: usize, class: ArrClass, opts: EnumOptions) -> Result<Vec<CanonicalCode>, EnumError> {
    if n < 2 {
        return Err(EnumError::TooFewCircles(n));
    }
    match class.base() {
        ArrClass::Great => {
            if n > 7 && !opts.long_run {
                return Err(EnumError::NeedsLongRun { n, class });
            }
            Ok(great_codes(n))
        }
        ArrClass::Connected => {
            if n > 6 {
                return Err(EnumError::Unsupported { n, class });
            }
            if n == 2 {
                return Ok(vec![canonical_code(&two_circles())]);
            }
            let g = flip_graph(&[great_seed(n)], Moves::TriangleDigon, |_| true, false, opts.budget)?;
            let mut codes: Vec<CanonicalCode> = if class == ArrClass::Connected {
                g.nodes
            } else {
                g.nodes
                    .into_par_iter()
                    .filter(|c| class.contains(&c.to_arrangement().expect("stored code decodes")))
                    .collect()
            };
            codes.sort_unstable();
            Ok(codes)
        }
        _ => {
            if n == 7 && class == ArrClass::IntersectingDigonFree {
                if !opts.long_run {
                    return Err(EnumError::NeedsLongRun { n, class });
                }
                let filter = |a: &Arrangement| a.flags().intersecting && a.flags().digon_free;
                let g = flip_graph(&[great_seed(n)], Moves::Triangle, filter, false, opts.budget)?;
                let mut codes = g.nodes;
                codes.sort_unstable();
                return Ok(codes);
            }
            if n > 6 {
                return Err(if n == 7 {
                    EnumError::NeedsLongRun { n, class }
                } else {
                    EnumError::Unsupported { n, class }
                });
            }
            enumerate_by_extension(n, class)
        }
    }
}

/// Distinct great-pseudocircle arrangements from all wiring diagrams.
pub fn great_codes(n: usize) -> Vec<CanonicalCode> {
    if n == 2 {
        return vec![canonical_code(&two_circles())];
    }
    let words = wiring_words(n);
    let codes: HashSet<CanonicalCode> =
        words.par_iter().map(|w| canonical_code(&from_wiring(n, w).expect("generated words are simple"))).collect();
    let mut v: Vec<_> = codes.into_iter().collect();
    v.sort_unstable();
    v
}

/// Table-style class counts of a set of arrangements.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Census {
    pub connected: usize,
    pub connected_digon_free: usize,
    pub connected_cylindrical: usize,
    pub intersecting: usize,
    pub intersecting_digon_free: usize,
    pub great: usize,
}

impl Census {
    pub fn add(&mut self, arr: &Arrangement) {
        let f = arr.flags();
        self.connected += 1;
        self.connected_digon_free += f.digon_free as usize;
        self.connected_cylindrical += f.cylindrical as usize;
        self.intersecting += f.intersecting as usize;
        self.intersecting_digon_free += (f.intersecting && f.digon_free) as usize;
        self.great += f.great as usize;
    }

    pub fn of_codes(codes: &[CanonicalCode]) -> Census {
        let mut c = Census::default();
        for code in codes {
            c.add(&code.to_arrangement().expect("stored code decodes"));
        }
        c
    }

    pub fn rows(&self) -> [(&'static str, usize); 6] {
        [
            ("connected", self.connected),
            ("connected+digon-free", self.connected_digon_free),
            ("connected+cylindrical", self.connected_cylindrical),
            ("intersecting", self.intersecting),
            ("intersecting+digon-free", self.intersecting_digon_free),
            ("great", self.great),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_circles_extend_to_krupp_and_nonkrupp() {
        let exts = extensions(&two_circles(), ExtensionMode::Intersecting);
        assert_eq!(exts.len(), 2);
        let great: Vec<bool> = exts.iter().map(|a| a.is_great()).collect();
        assert!(great.contains(&true) && great.contains(&false));
    }

    #[test]
    fn deleting_the_new_circle_restores_the_parent() {
        let parent = great_seed(3);
        let code = canonical_code(&parent);
        for ext in extensions(&parent, ExtensionMode::Connected) {
            assert_eq!(canonical_code(&ext.delete_circle(3).unwrap()), code);
        }
    }

    #[test]
    fn small_censuses() {
        assert_eq!(enumerate_class(3, ArrClass::Connected).unwrap().len(), 3);
        assert_eq!(enumerate_by_extension(3, ArrClass::Connected).unwrap().len(), 3);
        assert_eq!(enumerate_class(4, ArrClass::Intersecting).unwrap().len(), 8);
        assert_eq!(enumerate_by_extension(4, ArrClass::Connected).unwrap().len(), 21);
        assert_eq!(enumerate_class(4, ArrClass::IntersectingDigonFree).unwrap().len(), 2);
    }

    #[test]
    fn guards() {
        assert!(matches!(enumerate_class(1, ArrClass::Connected), Err(EnumError::TooFewCircles(1))));
        assert!(matches!(enumerate_class(7, ArrClass::IntersectingDigonFree), Err(EnumError::NeedsLongRun { .. })));
        assert!(matches!(enumerate_class(7, ArrClass::Connected), Err(EnumError::Unsupported { .. })));
    }

    #[test]
    fn class_names_round_trip() {
        for c in ArrClass::ALL {
            assert_eq!(c.name().parse::<ArrClass>().unwrap(), c);
        }
    }
}
