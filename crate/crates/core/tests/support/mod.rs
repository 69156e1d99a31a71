//! Counted property checks shared by the property suite and the acceptance
//! harness. Each returns the number of instances checked or a description
//! of the first failure.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use pcarr::arrangement::{Arrangement, TripleType};
use pcarr::canon::canonical_code;
use pcarr::enumerate::{enumerate_class, ArrClass};
use pcarr::fixtures::shipped_certificates;
use pcarr::geom::{
    check_miquel, check_radical_concurrency, extract_arrangement, krupp_predicate, pair_relation, triple_concurrent,
    Circle, CircleArrangement, PairRelation,
};
use pcarr::map::validate;
use pcarr::realizer::minimize_certificate;
use pcarr::store::{format_cert, parse_cert_line};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<usize, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Fifty arrangements spread over n = 3, 4, 5.
pub fn sample_arrangements() -> &'static [Arrangement] {
    static CELL: OnceLock<Vec<Arrangement>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut codes = enumerate_class(3, ArrClass::Connected).unwrap();
        codes.extend(enumerate_class(4, ArrClass::Connected).unwrap());
        let five = enumerate_class(5, ArrClass::Intersecting).unwrap();
        codes.extend(five.iter().step_by(11).take(50 - codes.len()).cloned());
        assert_eq!(codes.len(), 50);
        codes.iter().map(|c| c.to_arrangement().unwrap()).collect()
    })
}

/// Random dart relabelings, half of them mirrored, leave the code unchanged.
pub fn relabeling_invariance(count: usize) -> Check {
    let arrs = sample_arrangements();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..count {
        let arr = &arrs[i % arrs.len()];
        let mut perm: Vec<u32> = (0..arr.map().num_darts() as u32).collect();
        perm.shuffle(&mut rng);
        let mut map = arr.map().relabeled(&perm);
        if rng.gen_bool(0.5) {
            map = map.mirrored();
        }
        let relabeled = validate(map).map_err(|e| format!("relabeled map rejected: {e}"))?;
        ensure(canonical_code(&relabeled) == canonical_code(arr), || {
            format!("relabeling changed the code of {}", canonical_code(arr))
        })?;
    }
    Ok(count)
}

/// V - E + F = 2 with E = 2V, and face sizes sum to 2E, for every connected
/// arrangement with at most `max_n` circles.
pub fn euler_formula(max_n: usize) -> Check {
    let mut checked = 0;
    for n in 2..=max_n {
        for code in enumerate_class(n, ArrClass::Connected).map_err(|e| e.to_string())? {
            let arr = code.to_arrangement().map_err(|e| e.to_string())?;
            let v = arr.num_crossings();
            let cells = &arr.flags().cell_vector;
            ensure(arr.num_faces() == v + 2, || format!("{code}: {} faces, {v} vertices", arr.num_faces()))?;
            ensure(cells.iter().sum::<usize>() == v + 2, || format!("{code}: cell vector {cells:?}"))?;
            let incidences: usize = cells.iter().enumerate().map(|(k, c)| k * c).sum();
            ensure(incidences == 4 * v, || format!("{code}: {incidences} edge-face incidences"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn random_circle(rng: &mut ChaCha8Rng, k: i64) -> Circle {
    Circle::new(rng.gen_range(-k..=k), rng.gen_range(-k..=k), rng.gen_range(1..=k))
}

fn pairwise_crossing(cs: &[Circle]) -> bool {
    (0..cs.len()).all(|i| (i + 1..cs.len()).all(|j| pair_relation(&cs[i], &cs[j]) == PairRelation::Crossing))
}

/// The radical-center predicate agrees with the extracted triple type.
pub fn krupp_agreement(count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen: HashMap<TripleType, usize> = HashMap::new();
    let mut checked = 0;
    while checked < count {
        let cs: Vec<Circle> = (0..3).map(|_| random_circle(&mut rng, 30)).collect();
        if !pairwise_crossing(&cs) || triple_concurrent(&cs[0], &cs[1], &cs[2]).map_err(|e| e.to_string())? {
            continue;
        }
        let Ok(arr) = extract_arrangement(&CircleArrangement::new(cs.clone())) else { continue };
        let geometric = krupp_predicate(&cs[0], &cs[1], &cs[2]).map_err(|e| e.to_string())?;
        ensure(geometric == arr.triple_type(0, 1, 2), || format!("{cs:?}: predicate says {geometric:?}"))?;
        *seen.entry(geometric).or_default() += 1;
        checked += 1;
    }
    ensure(seen.len() == 2, || format!("only {seen:?} sampled"))?;
    Ok(checked)
}

/// Pairwise radical axes of three crossing circles meet in a point or are
/// parallel; every fifth instance has collinear centers.
pub fn radical_concurrency(count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < count {
        let mut cs: Vec<Circle> = (0..3).map(|_| random_circle(&mut rng, 1000)).collect();
        if checked % 5 == 0 {
            let (dx, dy) = (cs[1].x - cs[0].x, cs[1].y - cs[0].y);
            let t = rng.gen_range(-2..=2);
            cs[2] = Circle::new(cs[0].x + t * dx, cs[0].y + t * dy, cs[2].r);
        }
        if !pairwise_crossing(&cs) {
            continue;
        }
        let ok = check_radical_concurrency(&cs[0], &cs[1], &cs[2]).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{cs:?}: radical axes not concurrent"))?;
        checked += 1;
    }
    Ok(checked)
}

const WITNESS_R: i64 = 65;

/// Lattice points on the witness circle about the origin.
fn lattice_points() -> Vec<(i64, i64)> {
    let r = WITNESS_R;
    (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).filter(|&(x, y)| x * x + y * y == r * r).collect()
}

fn isqrt_exact(v: i64) -> Option<i64> {
    let r = (v as f64).sqrt().round() as i64;
    (r * r == v).then_some(r)
}

/// Integer circles through exactly two lattice points of the witness, keyed
/// by the sorted pair of point indices.
fn chords() -> &'static HashMap<(usize, usize), Vec<Circle>> {
    static CELL: OnceLock<HashMap<(usize, usize), Vec<Circle>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let pts = lattice_points();
        let mut out: HashMap<(usize, usize), Vec<Circle>> = HashMap::new();
        for qx in -150i64..=150 {
            for qy in -150i64..=150 {
                let mut by_r: HashMap<i64, Vec<usize>> = HashMap::new();
                for (i, &(px, py)) in pts.iter().enumerate() {
                    if let Some(r) = isqrt_exact((px - qx).pow(2) + (py - qy).pow(2)) {
                        by_r.entry(r).or_default().push(i);
                    }
                }
                for (r, on) in by_r {
                    if on.len() == 2 && r > 0 && (qx, qy) != (0, 0) {
                        out.entry((on[0], on[1])).or_default().push(Circle::new(qx, qy, r));
                    }
                }
            }
        }
        out
    })
}

/// Four circles, consecutive ones meeting on the witness circle: the other
/// four crossings are concyclic. Moving one circle off the witness must not
/// pass the check.
pub fn miquel(count: usize) -> Check {
    let witness = Circle::new(0, 0, WITNESS_R);
    let m = lattice_points().len();
    let through = |a: usize, b: usize| chords().get(&(a.min(b), a.max(b))).map_or(&[][..], Vec::as_slice);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for _ in 0..200 * count {
        if checked == count {
            break;
        }
        let mut idx: Vec<usize> = (0..m).collect();
        idx.shuffle(&mut rng);
        // Circle k passes through points k-1 and k, so circles k and k+1 meet at point k.
        let choice: Option<Vec<Circle>> =
            (0..4).map(|k| through(idx[(k + 3) % 4], idx[k]).choose(&mut rng).copied()).collect();
        let Some(cs) = choice else { continue };
        let Ok(holds) = check_miquel([&cs[0], &cs[1], &cs[2], &cs[3]], &witness) else { continue };
        ensure(holds, || format!("{cs:?}: Miquel check failed"))?;
        let mut moved = cs.clone();
        moved[1].r += 1;
        let off = check_miquel([&moved[0], &moved[1], &moved[2], &moved[3]], &witness);
        ensure(!matches!(off, Ok(true)), || format!("{moved:?}: off-witness instance accepted"))?;
        checked += 1;
    }
    ensure(checked == count, || format!("only {checked} Miquel configurations found"))?;
    Ok(checked)
}

/// Every shipped certificate verifies and survives a text round trip.
pub fn cache_round_trip() -> Check {
    let certs = shipped_certificates();
    for (i, cert) in certs.iter().enumerate() {
        cert.verify().map_err(|e| format!("shipped certificate {}: {e}", i + 1))?;
        let back = parse_cert_line(i + 1, &format_cert(cert)).map_err(|e| e.to_string())?;
        ensure(&back == cert, || format!("certificate {} changed in a round trip", i + 1))?;
    }
    Ok(certs.len())
}

/// Minimizing a scaled and translated shipped certificate twice gives the
/// same result as once.
pub fn minimize_idempotence(count: usize) -> Check {
    let certs = shipped_certificates();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..count {
        let cert = certs.choose(&mut rng).ok_or("no shipped certificates")?;
        let mut loose = cert.clone();
        loose.scene = cert.scene.scaled(rng.gen_range(1..5)).translated(rng.gen_range(-20..20), rng.gen_range(-20..20));
        let once = minimize_certificate(&loose);
        once.verify().map_err(|e| format!("minimized certificate fails: {e}"))?;
        ensure(once.scene.max_param() <= loose.scene.max_param(), || "minimizing grew the scene".into())?;
        ensure(minimize_certificate(&once) == once, || format!("minimize not idempotent on {}", cert.code))?;
    }
    Ok(count)
}
