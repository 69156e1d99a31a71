//! Heuristic search for integer circle certificates.
//!
//! Every certificate is accepted only after exact extraction reproduces its
//! code. Searches draw from a seeded ChaCha stream, so runs bounded by
//! `max_restarts` alone are reproducible; the wall-clock cap is a safety stop.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_code, CanonicalCode};
use crate::flips::FlipGraph;
use crate::geom::{extract_arrangement, pair_relation, Circle, CircleArrangement, PairRelation, MAX_PARAM};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizationBudget {
    pub max_seconds: f64,
    /// Samples for random search; walk length for perturbation.
    pub max_restarts: usize,
    /// Parameters are drawn from `1..=k`.
    pub k: i64,
    /// Scale applied to a seed before perturbing it.
    pub s: i64,
    /// Largest single-parameter step during perturbation.
    pub jitter: i64,
}

impl Default for RealizationBudget {
    fn default() -> Self {
        RealizationBudget { max_seconds: 60.0, max_restarts: 200_000, k: 50, s: 64, jitter: 1 }
    }
}

impl RealizationBudget {
    fn deadline(&self, start: Instant) -> Instant {
        start + Duration::from_secs_f64(self.max_seconds.max(0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub code: CanonicalCode,
    pub scene: CircleArrangement,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("scene does not realize an arrangement: {0}")]
    Geometry(#[from] crate::geom::GeomError),
    #[error("scene realizes {found}, not the annotated code")]
    Mismatch { found: CanonicalCode },
}

impl Certificate {
    /// Builds a certificate for whatever `scene` realizes.
    pub fn from_scene(scene: CircleArrangement) -> Result<Certificate, CertError> {
        let code = canonical_code(&extract_arrangement(&scene)?);
        Ok(Certificate { code, scene })
    }

    /// Exact check that the scene realizes the annotated code.
    pub fn verify(&self) -> Result<(), CertError> {
        let found = canonical_code(&extract_arrangement(&self.scene)?);
        if found != self.code {
            return Err(CertError::Mismatch { found });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("realization budget exhausted with {} certificates", partial.len())]
    BudgetExceeded { partial: Vec<Certificate> },
}

/// Code realized by `scene`, if any.
fn realized(scene: &CircleArrangement) -> Option<CanonicalCode> {
    extract_arrangement(scene).ok().map(|a| canonical_code(&a))
}

fn crossing_pairs(scene: &CircleArrangement) -> usize {
    let c = &scene.circles;
    let mut k = 0;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if pair_relation(&c[i], &c[j]) == PairRelation::Crossing {
                k += 1;
            }
        }
    }
    k
}

/// Records `code` if it is an open target.
fn record(
    code: CanonicalCode,
    scene: &CircleArrangement,
    open: &mut HashSet<CanonicalCode>,
    out: &mut Vec<Certificate>,
) -> bool {
    if open.remove(&code) {
        out.push(Certificate { code, scene: scene.clone() });
        true
    } else {
        false
    }
}

/// Samples scenes of `n` circles with parameters in `1..=K`.
pub fn random_search(
    targets: &HashSet<CanonicalCode>,
    n: usize,
    budget: &RealizationBudget,
    seed: u64,
) -> Vec<Certificate> {
    let start = Instant::now();
    let deadline = budget.deadline(start);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut open: HashSet<CanonicalCode> = targets.iter().filter(|c| c.n() == n).cloned().collect();
    // Number of crossing pairs is half the crossing count.
    let pair_counts: HashSet<usize> = open.iter().map(|c| c.num_crossings() / 2).collect();
    let mut out = Vec::new();
    for _ in 0..budget.max_restarts {
        if open.is_empty() || Instant::now() > deadline {
            break;
        }
        let scene = CircleArrangement::new(
            (0..n)
                .map(|_| {
                    Circle::new(rng.gen_range(1..=budget.k), rng.gen_range(1..=budget.k), rng.gen_range(1..=budget.k))
                })
                .collect(),
        );
        if !pair_counts.contains(&crossing_pairs(&scene)) {
            continue;
        }
        if let Some(code) = realized(&scene) {
            record(code, &scene, &mut open, &mut out);
        }
    }
    out
}

/// Random walk of single-parameter jitters from the scaled seed.
pub fn perturb_search(
    seed_cert: &Certificate,
    targets: &HashSet<CanonicalCode>,
    budget: &RealizationBudget,
    seed: u64,
) -> Vec<Certificate> {
    let mut open: HashSet<CanonicalCode> = targets.clone();
    open.remove(&seed_cert.code);
    let mut out = Vec::new();
    perturb_into(seed_cert, &mut open, budget, seed, &mut out);
    out
}

fn perturb_into(
    seed_cert: &Certificate,
    open: &mut HashSet<CanonicalCode>,
    budget: &RealizationBudget,
    seed: u64,
    out: &mut Vec<Certificate>,
) {
    if budget.jitter == 0 || open.is_empty() {
        return;
    }
    let deadline = budget.deadline(Instant::now());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = seed_cert.scene.scaled(budget.s.max(1));
    if base.max_param() > MAX_PARAM / 2 {
        return;
    }
    let mut cur = base.clone();
    let n = cur.len();
    for _ in 0..budget.max_restarts {
        if open.is_empty() || Instant::now() > deadline {
            break;
        }
        let mut next = cur.clone();
        let c = &mut next.circles[rng.gen_range(0..n)];
        let step = rng.gen_range(1..=budget.jitter) * if rng.gen_bool(0.5) { 1 } else { -1 };
        match rng.gen_range(0..3) {
            0 => c.x += step,
            1 => c.y += step,
            _ => c.r = (c.r + step).max(1),
        }
        if let Some(code) = realized(&next) {
            record(code, &next, open, out);
            cur = next;
        }
    }
}

/// Local moves aimed at single flip events: a circle is pushed just across a
/// crossing of two others (triangle flips) or a pair is pushed across
/// tangency (digon flips).
fn event_moves(scene: &CircleArrangement, delta: f64) -> Vec<CircleArrangement> {
    let c = &scene.circles;
    let n = c.len();
    let f = |v: i64| v as f64;
    let mut out = Vec::new();
    let mut push = |idx: usize, x: f64, y: f64, r: f64| {
        if r < 1.0 {
            return;
        }
        let mut s = scene.clone();
        s.circles[idx] = Circle::new(x.round() as i64, y.round() as i64, r.round() as i64);
        if s.circles[idx] != scene.circles[idx] && s.max_param() <= MAX_PARAM {
            out.push(s);
        }
    };
    for b in 0..n {
        for cc in b + 1..n {
            let (cb, ccc) = (&c[b], &c[cc]);
            if pair_relation(cb, ccc) != PairRelation::Crossing {
                continue;
            }
            let (dx, dy) = (f(ccc.x - cb.x), f(ccc.y - cb.y));
            let d2 = dx * dx + dy * dy;
            let k = d2 + f(cb.r) * f(cb.r) - f(ccc.r) * f(ccc.r);
            let s = (4.0 * f(cb.r) * f(cb.r) * d2 - k * k).max(0.0).sqrt();
            for beta in [1.0, -1.0] {
                let px = f(cb.x) + (k * dx - beta * s * dy) / (2.0 * d2);
                let py = f(cb.y) + (k * dy + beta * s * dx) / (2.0 * d2);
                for a in (0..n).filter(|&a| a != b && a != cc) {
                    let ca = &c[a];
                    let dist = ((px - f(ca.x)).powi(2) + (py - f(ca.y)).powi(2)).sqrt();
                    let (ux, uy) = ((px - f(ca.x)) / dist, (py - f(ca.y)) / dist);
                    for sgn in [1.0, -1.0] {
                        push(a, f(ca.x), f(ca.y), dist + sgn * delta);
                        // Move the center along the radius instead.
                        let shift = dist + sgn * delta - f(ca.r);
                        push(a, f(ca.x) + ux * shift, f(ca.y) + uy * shift, f(ca.r));
                        // Circles through two points of `a` placed symmetrically
                        // about the direction of P, and through P moved by delta.
                        let (tx, ty) = (px + sgn * delta * ux, py + sgn * delta * uy);
                        let theta = uy.atan2(ux);
                        for span in [0.15f64, 0.3, 0.6, 1.0, 1.5, 2.2, 2.8] {
                            let q = |t: f64| (f(ca.x) + f(ca.r) * t.cos(), f(ca.y) + f(ca.r) * t.sin());
                            if let Some((x, y, r)) = circumcircle(q(theta - span), q(theta + span), (tx, ty)) {
                                push(a, x, y, r);
                            }
                        }
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (ca, cb) = (&c[a], &c[b]);
            let d = (f(cb.x - ca.x).powi(2) + f(cb.y - ca.y).powi(2)).sqrt();
            let rb = f(cb.r);
            for target in [d - rb, rb - d, d + rb] {
                for sgn in [1.0, -1.0] {
                    push(a, f(ca.x), f(ca.y), target + sgn * delta);
                }
            }
            if d > 0.0 {
                let (ux, uy) = (f(cb.x - ca.x) / d, f(cb.y - ca.y) / d);
                for target in [f(ca.r) + rb, (f(ca.r) - rb).abs()] {
                    for sgn in [1.0, -1.0] {
                        let shift = d - (target + sgn * delta);
                        push(a, f(ca.x) + ux * shift, f(ca.y) + uy * shift, f(ca.r));
                    }
                }
            }
        }
    }
    out
}

fn circumcircle(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> Option<(f64, f64, f64)> {
    let d = 2.0 * (p.0 * (q.1 - r.1) + q.0 * (r.1 - p.1) + r.0 * (p.1 - q.1));
    if d.abs() < 1e-9 {
        return None;
    }
    let (p2, q2, r2) = (p.0 * p.0 + p.1 * p.1, q.0 * q.0 + q.1 * q.1, r.0 * r.0 + r.1 * r.1);
    let x = (p2 * (q.1 - r.1) + q2 * (r.1 - p.1) + r2 * (p.1 - q.1)) / d;
    let y = (p2 * (r.0 - q.0) + q2 * (p.0 - r.0) + r2 * (q.0 - p.0)) / d;
    let rad = ((p.0 - x).powi(2) + (p.1 - y).powi(2)).sqrt();
    (rad.is_finite() && rad < MAX_PARAM as f64 / 2.0).then_some((x, y, rad))
}

/// Event moves from `base`; open targets are recorded, every other realized
/// code is passed to `other`.
fn event_search(
    base: &CircleArrangement,
    open: &mut HashSet<CanonicalCode>,
    out: &mut Vec<Certificate>,
    mut other: impl FnMut(CanonicalCode, &CircleArrangement),
) {
    if base.max_param() > MAX_PARAM / 4 {
        return;
    }
    for delta in [1.0, 3.0, 10.0] {
        for cand in event_moves(base, delta) {
            if let Some(code) = realized(&cand) {
                if !record(code.clone(), &cand, open, out) {
                    other(code, &cand);
                }
            }
        }
    }
}

/// A target with certified one-circle deletions: the deleted circle's
/// crossing degree and the certified scenes it can be added to.
struct ExtensionTarget {
    code: CanonicalCode,
    bases: Vec<(usize, CircleArrangement)>,
}

fn extension_targets(
    targets: &HashSet<CanonicalCode>,
    certified: &HashMap<CanonicalCode, Certificate>,
) -> Vec<ExtensionTarget> {
    let mut codes: Vec<&CanonicalCode> = targets.iter().collect();
    codes.sort_unstable();
    codes
        .par_iter()
        .filter_map(|code| {
            let arr = code.to_arrangement().ok()?;
            let n = arr.n();
            let mut seen = HashSet::new();
            let bases: Vec<(usize, CircleArrangement)> = (0..n)
                .filter_map(|i| {
                    let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                    let sub = canonical_code(&arr.restrict(&keep).ok()?);
                    let degree = keep.iter().filter(|&&j| arr.crossings_between(i, j) > 0).count();
                    let cert = certified.get(&sub)?;
                    seen.insert((sub, degree)).then(|| (degree, cert.scene.clone()))
                })
                .collect();
            (!bases.is_empty()).then(|| ExtensionTarget { code: (*code).clone(), bases })
        })
        .collect()
}

/// Samples per target and round in `extension_search`.
const EXTENSION_SAMPLES: usize = 4000;

/// Certifies targets by adding one circle to a certified realization of a
/// one-circle deletion. Each round varies every base by a walk that keeps its
/// code, then samples the added circle, rejecting it early unless it crosses
/// exactly as many circles as the deleted one.
pub fn extension_search(
    targets: &HashSet<CanonicalCode>,
    certified: &HashMap<CanonicalCode, Certificate>,
    budget: &RealizationBudget,
    seed: u64,
) -> Vec<Certificate> {
    let deadline = budget.deadline(Instant::now());
    let mut pending = extension_targets(targets, certified);
    let mut out = Vec::new();
    let mut round = 0u64;
    while !pending.is_empty() && Instant::now() < deadline && (round as usize) < budget.max_restarts {
        let found: Vec<Option<Certificate>> = pending
            .par_iter()
            .enumerate()
            .map(|(idx, t)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (round << 32) ^ idx as u64);
                let (degree, base) = t.bases.choose(&mut rng)?;
                let scene = base_variant(base, &mut rng);
                extend_once(&scene, *degree, &t.code, &mut rng)
            })
            .collect();
        let mut keep = Vec::with_capacity(pending.len());
        for (t, f) in pending.into_iter().zip(found) {
            match f {
                Some(c) => out.push(c),
                None => keep.push(t),
            }
        }
        pending = keep;
        round += 1;
    }
    out
}

/// The base, inverted about a random point half of the time, scaled by a
/// random power of two and moved by a walk of single steps that keep its
/// code.
fn base_variant(base: &CircleArrangement, rng: &mut ChaCha8Rng) -> CircleArrangement {
    let Some(code) = realized(base) else { return base.clone() };
    let base = match rng.gen_bool(0.5).then(|| inverted(base, rng)).flatten() {
        Some(inv) if realized(&inv).as_ref() == Some(&code) => inv,
        _ => base.clone(),
    };
    let scale = 1i64 << rng.gen_range(2..7);
    let mut cur = base.scaled(scale);
    if cur.max_param() > MAX_PARAM / 8 {
        return base;
    }
    let n = cur.len();
    let step_max = (scale / 2).max(1);
    for _ in 0..40 {
        let mut next = cur.clone();
        let c = &mut next.circles[rng.gen_range(0..n)];
        let step = rng.gen_range(1..=step_max) * if rng.gen_bool(0.5) { 1 } else { -1 };
        match rng.gen_range(0..3) {
            0 => c.x += step,
            1 => c.y += step,
            _ => c.r = (c.r + step).max(1),
        }
        if realized(&next).as_ref() == Some(&code) {
            cur = next;
        }
    }
    cur
}

/// Image of the scene under inversion in a unit circle about a random point
/// of its bounding box, rescaled to integers of magnitude about 500. The
/// image realizes the same arrangement on the sphere, with a different face
/// sent to infinity.
fn inverted(scene: &CircleArrangement, rng: &mut ChaCha8Rng) -> Option<CircleArrangement> {
    let cs = &scene.circles;
    let f = |v: i64| v as f64;
    let lo_x = cs.iter().map(|c| c.x - c.r).min()?;
    let hi_x = cs.iter().map(|c| c.x + c.r).max()?;
    let lo_y = cs.iter().map(|c| c.y - c.r).min()?;
    let hi_y = cs.iter().map(|c| c.y + c.r).max()?;
    let (px, py) = (rng.gen_range(f(lo_x)..=f(hi_x)), rng.gen_range(f(lo_y)..=f(hi_y)));
    let mut img = Vec::with_capacity(cs.len());
    for c in cs {
        let (dx, dy) = (f(c.x) - px, f(c.y) - py);
        let den = dx * dx + dy * dy - f(c.r) * f(c.r);
        // A circle through the center of inversion would become a line.
        if den.abs() < 1e-3 * f(c.r) * f(c.r) {
            return None;
        }
        img.push((dx / den, dy / den, f(c.r) / den.abs()));
    }
    let ext = img.iter().map(|&(x, y, r)| x.abs().max(y.abs()) + r).fold(0.0, f64::max);
    let k = 500.0 / ext;
    let out: Vec<Circle> = img
        .iter()
        .map(|&(x, y, r)| Circle::new((x * k).round() as i64, (y * k).round() as i64, (r * k).round() as i64))
        .collect();
    out.iter().all(|c| c.r >= 1).then(|| CircleArrangement::new(out))
}

fn extend_once(
    scene: &CircleArrangement,
    degree: usize,
    target: &CanonicalCode,
    rng: &mut ChaCha8Rng,
) -> Option<Certificate> {
    let cs = &scene.circles;
    let lo_x = cs.iter().map(|c| c.x - c.r).min()?;
    let hi_x = cs.iter().map(|c| c.x + c.r).max()?;
    let lo_y = cs.iter().map(|c| c.y - c.r).min()?;
    let hi_y = cs.iter().map(|c| c.y + c.r).max()?;
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1);
    for _ in 0..EXTENSION_SAMPLES {
        let new = Circle::new(rng.gen_range(lo_x..=hi_x), rng.gen_range(lo_y..=hi_y), rng.gen_range(1..=span));
        if cs.iter().filter(|c| pair_relation(c, &new) == PairRelation::Crossing).count() != degree {
            continue;
        }
        let mut with = scene.clone();
        with.circles.push(new);
        if realized(&with).as_ref() == Some(target) {
            return Some(Certificate { code: target.clone(), scene: with });
        }
    }
    None
}

/// Alternative realizations kept per frontier code.
const POOL: usize = 12;

/// Certifies flip-graph neighbors of certified nodes until no round makes
/// progress or the time budget runs out. New certificates are added to
/// `certified` and returned.
///
/// Each frontier node keeps a small pool of distinct realizations, since a
/// flip that is blocked from one realization may be reachable from another.
pub fn neighbor_seeded_search(
    graph: &FlipGraph,
    certified: &mut HashMap<CanonicalCode, Certificate>,
    budget: &RealizationBudget,
    seed: u64,
) -> Result<Vec<Certificate>, RealizeError> {
    let start = Instant::now();
    let deadline = budget.deadline(start);
    let adj = graph.neighbors();
    let mut open: HashSet<CanonicalCode> =
        graph.nodes.iter().filter(|c| !certified.contains_key(*c)).cloned().collect();
    let mut found = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: HashMap<CanonicalCode, Vec<CircleArrangement>> = HashMap::new();
    let mut scale = budget.s.max(1);
    let mut stalled = 0;
    while !open.is_empty() {
        let before = found.len();
        // Certified nodes with at least one open neighbor.
        let mut frontier: Vec<u32> = (0..graph.nodes.len() as u32)
            .filter(|&u| certified.contains_key(&graph.nodes[u as usize]))
            .filter(|&u| adj[u as usize].iter().any(|&v| open.contains(&graph.nodes[v as usize])))
            .collect();
        if frontier.is_empty() {
            break;
        }
        frontier.shuffle(&mut rng);
        let on_frontier: HashSet<CanonicalCode> = frontier.iter().map(|&u| graph.nodes[u as usize].clone()).collect();
        for u in frontier {
            if Instant::now() > deadline {
                return Err(RealizeError::BudgetExceeded { partial: found });
            }
            let code = &graph.nodes[u as usize];
            let cert = certified[code].clone();
            let mut scenes = vec![cert.scene.clone()];
            scenes.extend(pool.get(code).into_iter().flatten().cloned());
            let mut new = Vec::new();
            for scene in &scenes {
                let base = scene.scaled(scale);
                event_search(&base, &mut open, &mut new, |c, s| {
                    if on_frontier.contains(&c) {
                        let p = pool.entry(c).or_default();
                        let s = reduce(s);
                        if p.len() < POOL && !p.contains(&s) {
                            p.push(s);
                        }
                    }
                });
            }
            if new.is_empty() || stalled > 0 {
                let walk = RealizationBudget { max_restarts: budget.max_restarts.min(2_000), ..*budget };
                perturb_into(&cert, &mut open, &walk, rng.gen(), &mut new);
            }
            for c in new {
                let c = minimize_certificate(&c);
                certified.insert(c.code.clone(), c.clone());
                found.push(c);
            }
        }
        if found.len() == before {
            stalled += 1;
            scale *= 2;
            if stalled > 4 {
                break;
            }
        } else {
            stalled = 0;
            scale = budget.s.max(1);
        }
    }
    Ok(found)
}

/// The scene divided by the gcd of its parameters.
fn reduce(scene: &CircleArrangement) -> CircleArrangement {
    let g = gcd_of(scene).max(1);
    CircleArrangement::new(scene.circles.iter().map(|c| Circle::new(c.x / g, c.y / g, c.r / g)).collect())
}

fn gcd_of(scene: &CircleArrangement) -> i64 {
    scene.circles.iter().fold(0i64, |g, c| g.gcd(&c.x).gcd(&c.y).gcd(&c.r))
}

fn weight(scene: &CircleArrangement) -> (i64, i64) {
    let sum = scene.circles.iter().map(|c| c.x.abs() + c.y.abs() + c.r).sum();
    (scene.max_param(), sum)
}

/// A smaller certificate for the same code: divide by the gcd, coarsen by
/// rounded division, translate toward the origin and step single parameters
/// toward zero, until nothing improves.
pub fn minimize_certificate(cert: &Certificate) -> Certificate {
    let code = &cert.code;
    let keeps = |s: &CircleArrangement| realized(s).as_ref() == Some(code);
    let mut cur = cert.scene.clone();
    loop {
        let start = weight(&cur);
        let g = gcd_of(&cur);
        if g > 1 {
            cur = CircleArrangement::new(cur.circles.iter().map(|c| Circle::new(c.x / g, c.y / g, c.r / g)).collect());
        }
        for k in 2..=8i64 {
            let coarse = CircleArrangement::new(
                cur.circles
                    .iter()
                    .map(|c| Circle::new(div_round(c.x, k), div_round(c.y, k), div_round(c.r, k).max(1)))
                    .collect(),
            );
            if weight(&coarse) < weight(&cur) && keeps(&coarse) {
                cur = coarse;
                break;
            }
        }
        // Steps halve from the scene's size down to 1, so far-off scenes
        // shrink in logarithmically many exact checks.
        let top = 1i64 << (63 - cur.max_param().max(1).leading_zeros());
        for (tx, ty) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let mut step = top;
            while step >= 1 {
                let moved = cur.translated(tx * step, ty * step);
                if weight(&moved) < weight(&cur) && keeps(&moved) {
                    cur = moved;
                } else {
                    step /= 2;
                }
            }
        }
        for i in 0..cur.len() {
            for p in 0..3 {
                let mut step = top;
                while step >= 1 {
                    let mut next = cur.clone();
                    let c = &mut next.circles[i];
                    let (v, floor) = match p {
                        0 => (&mut c.x, 0),
                        1 => (&mut c.y, 0),
                        _ => (&mut c.r, 1),
                    };
                    if v.abs() - step < floor {
                        step /= 2;
                        continue;
                    }
                    *v -= v.signum() * step;
                    if weight(&next) < weight(&cur) && keeps(&next) {
                        cur = next;
                    } else {
                        step /= 2;
                    }
                }
            }
        }
        if weight(&cur) >= start {
            break;
        }
    }
    Certificate { code: code.clone(), scene: cur }
}

fn div_round(v: i64, k: i64) -> i64 {
    let q = v.div_euclid(k);
    if 2 * v.rem_euclid(k) >= k {
        q + 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn krupp_cert() -> Certificate {
        Certificate::from_scene(CircleArrangement::new(vec![
            Circle::new(0, 0, 2),
            Circle::new(2, 0, 2),
            Circle::new(1, 2, 2),
        ]))
        .unwrap()
    }

    #[test]
    fn krupp_scene_is_great() {
        let cert = krupp_cert();
        assert!(cert.code.to_arrangement().unwrap().is_great());
        cert.verify().unwrap();
    }

    #[test]
    fn gcd_division_shrinks() {
        let big = Certificate { code: krupp_cert().code, scene: krupp_cert().scene.scaled(7) };
        let small = minimize_certificate(&big);
        assert!(small.scene.max_param() * 7 <= big.scene.max_param());
        small.verify().unwrap();
    }

    #[test]
    fn zero_jitter_finds_nothing() {
        let cert = krupp_cert();
        let all: HashSet<CanonicalCode> =
            crate::enumerate::enumerate_class(3, crate::enumerate::ArrClass::Connected).unwrap().into_iter().collect();
        let budget = RealizationBudget { jitter: 0, ..Default::default() };
        assert!(perturb_search(&cert, &all, &budget, 1).is_empty());
    }

    #[test]
    fn inversion_keeps_the_code() {
        let cert = krupp_cert();
        let base = cert.scene.scaled(50);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut kept = 0;
        for _ in 0..50 {
            if let Some(inv) = inverted(&base, &mut rng) {
                kept += (realized(&inv).as_ref() == Some(&cert.code)) as usize;
            }
        }
        assert!(kept >= 25, "{kept}");
    }

    #[test]
    fn extension_certifies_four_circle_targets() {
        use crate::enumerate::{enumerate_class, ArrClass};
        let mut library = HashMap::new();
        for code in enumerate_class(3, ArrClass::Intersecting).unwrap() {
            let cert = random_search(&HashSet::from([code.clone()]), 3, &RealizationBudget::default(), 1);
            library.insert(code, cert.into_iter().next().expect("three circles realize quickly"));
        }
        let targets: HashSet<CanonicalCode> = enumerate_class(4, ArrClass::Intersecting).unwrap().into_iter().collect();
        let budget = RealizationBudget { max_restarts: 200, ..Default::default() };
        let found = extension_search(&targets, &library, &budget, 5);
        assert!(found.len() >= 6, "{}", found.len());
        for c in &found {
            c.verify().unwrap();
            assert!(targets.contains(&c.code));
        }
    }
}
