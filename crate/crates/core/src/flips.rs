//! Triangle and digon flips and the flip graphs they generate.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::canon::{canonical_code, CanonicalCode};
use crate::map::Dart;
use crate::seq::{Crossing, Sequences};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipError {
    #[error("flip graph exceeded its budget after {nodes} nodes")]
    BudgetExceeded { nodes: usize },
    #[error("seed {0} is not in the requested class")]
    SeedOutsideClass(usize),
}

/// Where a digon flip happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigonSite {
    /// The digon face is removed together with its two crossings.
    Collapse { face: usize },
    /// The arc of dart `pushed` is pushed through the arc of dart `through`;
    /// both darts bound `face`.
    Create { face: usize, pushed: Dart, through: Dart },
}

/// Counters for digon candidates that did not produce a valid arrangement.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct DigonRejections {
    pub collapse_disconnects: usize,
    pub invalid: usize,
}

fn position(seq: &[usize], x: usize) -> usize {
    seq.iter().position(|&y| y == x).expect("crossing on circle")
}

/// Index in the circle sequence after which the arc of `d` starts.
fn arc_start(arr: &Arrangement, seq: &Sequences, d: Dart) -> usize {
    let c = arr.circle_of(d);
    let k = seq.circles[c].len();
    let p = position(&seq.circles[c], arr.vertex_of(d));
    if arr.is_forward(d) {
        p
    } else {
        (p + k - 1) % k
    }
}

/// Flips the triangular face `face`: every bounding circle swaps the two
/// triangle corners it carries.
pub fn flip_triangle(arr: &Arrangement, face: usize) -> Option<Arrangement> {
    let darts = &arr.faces()[face];
    if darts.len() != 3 {
        return None;
    }
    let mut seq = Sequences::from_arrangement(arr);
    for &d in darts {
        let c = arr.circle_of(d);
        let k = seq.circles[c].len();
        let i = arc_start(arr, &seq, d);
        seq.circles[c].swap(i, (i + 1) % k);
    }
    seq.to_arrangement().ok()
}

/// All triangle flips, keyed by the flipped face.
pub fn triangle_flips(arr: &Arrangement) -> Vec<(usize, Arrangement)> {
    arr.faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.len() == 3)
        .filter_map(|(idx, _)| {
            let out = flip_triangle(arr, idx);
            debug_assert!(out.is_some(), "triangle flip produced an invalid map");
            out.map(|a| (idx, a))
        })
        .collect()
}

/// Removes the digon `face`; `None` if the result is disconnected.
pub fn collapse_digon(arr: &Arrangement, face: usize) -> Option<Arrangement> {
    let darts = &arr.faces()[face];
    if darts.len() != 2 {
        return None;
    }
    let seq = Sequences::from_arrangement(arr);
    let mut dead = vec![false; seq.crossings.len()];
    for &d in darts {
        dead[arr.vertex_of(d)] = true;
    }
    seq.remove_crossings(&dead).to_arrangement().ok()
}

/// Pushes the arc of `pushed` through the arc of `through`, creating a digon.
/// Both darts must bound the same face and lie on disjoint circles.
pub fn create_digon(arr: &Arrangement, pushed: Dart, through: Dart) -> Option<Arrangement> {
    let face = arr.face_of(pushed);
    let (a, b) = (arr.circle_of(pushed), arr.circle_of(through));
    if arr.face_of(through) != face || a == b || arr.crossings_between(a, b) != 0 {
        return None;
    }
    let mut seq = Sequences::from_arrangement(arr);
    // The face lies on the right of a forward dart.
    let face_left_of_a = !arr.is_forward(pushed);
    let face_left_of_b = !arr.is_forward(through);
    let ia = arc_start(arr, &seq, pushed);
    let ib = arc_start(arr, &seq, through);
    let x = seq.crossings.len();
    let y = x + 1;
    // Along `a` the pushed arc meets `x` first. There `b` points to the left
    // of `a` exactly when the face is on the left of `b`; at `y` the other way.
    seq.crossings.push(Crossing::oriented(a, b, face_left_of_b));
    seq.crossings.push(Crossing::oriented(a, b, !face_left_of_b));
    seq.circles[a].splice(ia + 1..ia + 1, [x, y]);
    let along_b = if face_left_of_a != face_left_of_b { [x, y] } else { [y, x] };
    seq.circles[b].splice(ib + 1..ib + 1, along_b);
    seq.to_arrangement().ok()
}

/// All digon collapses and creations, with rejected candidates counted.
pub fn digon_flips_counted(arr: &Arrangement) -> (Vec<(DigonSite, Arrangement)>, DigonRejections) {
    let mut out = Vec::new();
    let mut rej = DigonRejections::default();
    for (idx, face) in arr.faces().iter().enumerate() {
        if face.len() == 2 {
            match collapse_digon(arr, idx) {
                Some(a) => out.push((DigonSite::Collapse { face: idx }, a)),
                None => rej.collapse_disconnects += 1,
            }
        }
        for (i, &da) in face.iter().enumerate() {
            for &db in &face[i + 1..] {
                let (a, b) = (arr.circle_of(da), arr.circle_of(db));
                if a == b || arr.crossings_between(a, b) != 0 {
                    continue;
                }
                match create_digon(arr, da, db) {
                    Some(r) => out.push((DigonSite::Create { face: idx, pushed: da, through: db }, r)),
                    None => rej.invalid += 1,
                }
            }
        }
    }
    (out, rej)
}

pub fn digon_flips(arr: &Arrangement) -> Vec<(DigonSite, Arrangement)> {
    digon_flips_counted(arr).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Moves {
    Triangle,
    TriangleDigon,
}

#[derive(Debug, Clone, Copy)]
pub struct FlipBudget {
    pub max_nodes: usize,
    pub max_time: Option<Duration>,
}

impl Default for FlipBudget {
    fn default() -> Self {
        FlipBudget { max_nodes: 5_000_000, max_time: None }
    }
}

/// Flip graph over canonical codes.
#[derive(Debug, Default, Clone)]
pub struct FlipGraph {
    pub nodes: Vec<CanonicalCode>,
    pub index: HashMap<CanonicalCode, u32>,
    /// Undirected edges between node indices (each stored once, `u < v`).
    pub edges: Vec<(u32, u32)>,
}

impl FlipGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.index.contains_key(code)
    }

    pub fn neighbors(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    /// Whether the recorded edges connect all nodes.
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.nodes.len()
    }
}

/// Flip neighbours of `arr` under `moves`.
pub fn neighbours(arr: &Arrangement, moves: Moves) -> Vec<Arrangement> {
    let mut out: Vec<Arrangement> = triangle_flips(arr).into_iter().map(|(_, a)| a).collect();
    if moves == Moves::TriangleDigon {
        out.extend(digon_flips(arr).into_iter().map(|(_, a)| a));
    }
    out
}

/// Breadth-first closure of `seeds` under `moves`, keeping only arrangements
/// accepted by `filter` (both endpoints of every edge lie in the class).
pub fn flip_graph<F>(
    seeds: &[Arrangement],
    moves: Moves,
    filter: F,
    record_edges: bool,
    budget: FlipBudget,
) -> Result<FlipGraph, FlipError>
where
    F: Fn(&Arrangement) -> bool + Sync,
{
    let start = Instant::now();
    let mut graph = FlipGraph::default();
    let mut frontier = Vec::new();
    for (i, s) in seeds.iter().enumerate() {
        if !filter(s) {
            return Err(FlipError::SeedOutsideClass(i));
        }
        let code = canonical_code(s);
        if !graph.index.contains_key(&code) {
            graph.index.insert(code.clone(), graph.nodes.len() as u32);
            graph.nodes.push(code);
            frontier.push(graph.nodes.len() as u32 - 1);
        }
    }
    while !frontier.is_empty() {
        let expanded: Vec<(u32, Vec<CanonicalCode>)> = frontier
            .par_iter()
            .map(|&u| {
                let arr = graph.nodes[u as usize].to_arrangement().expect("stored codes decode");
                let mut codes: Vec<CanonicalCode> =
                    neighbours(&arr, moves).iter().filter(|a| filter(a)).map(canonical_code).collect();
                codes.sort_unstable();
                codes.dedup();
                (u, codes)
            })
            .collect();
        let mut next = Vec::new();
        for (u, codes) in expanded {
            for code in codes {
                let v = match graph.index.get(&code) {
                    Some(&v) => v,
                    None => {
                        let v = graph.nodes.len() as u32;
                        graph.index.insert(code.clone(), v);
                        graph.nodes.push(code);
                        next.push(v);
                        v
                    }
                };
                if record_edges && u != v {
                    graph.edges.push((u.min(v), u.max(v)));
                }
            }
        }
        if graph.nodes.len() > budget.max_nodes || budget.max_time.is_some_and(|t| start.elapsed() > t) {
            return Err(FlipError::BudgetExceeded { nodes: graph.nodes.len() });
        }
        frontier = next;
    }
    if record_edges {
        graph.edges.sort_unstable();
        graph.edges.dedup();
    }
    Ok(graph)
}
