//! Exact predicates on integer circles and extraction of the arrangement a
//! circle scene realizes.
//!
//! Crossing points are algebraic. Relative to the center of circle `i`, the
//! crossing with circle `j` on branch `beta` points along
//! `U = K*D + beta*sqrt(S)*J*D`, where `D = c_j - c_i`, `d2 = |D|^2`,
//! `K = d2 + r_i^2 - r_j^2`, `S = 4*r_i^2*d2 - K^2` and `J` is the rotation
//! by +90 degrees (the left normal). Angular comparisons reduce to signs of
//! `a + b*sqrt(s) + c*sqrt(t) + e*sqrt(s*t)` with integer coefficients.
//! Circles are traversed counterclockwise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arrangement::{Arrangement, TripleType};
use crate::map::MapError;
use crate::seq::{Crossing, Sequences};

/// Largest admissible absolute value of a circle parameter. Keeps every
/// intermediate quantity of the fast path inside `i128`.
pub const MAX_PARAM: i64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle {
    pub x: i64,
    pub y: i64,
    pub r: i64,
}

impl Circle {
    pub const fn new(x: i64, y: i64, r: i64) -> Self {
        Circle { x, y, r }
    }

    /// Power of the rational point `(px, py)` with respect to this circle.
    pub fn power(&self, px: &BigRational, py: &BigRational) -> BigRational {
        let dx = px - rat(self.x as i128);
        let dy = py - rat(self.y as i128);
        &dx * &dx + &dy * &dy - rat(self.r as i128 * self.r as i128)
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.r)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CircleArrangement {
    pub circles: Vec<Circle>,
}

impl CircleArrangement {
    pub fn new(circles: Vec<Circle>) -> Self {
        CircleArrangement { circles }
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Largest absolute parameter.
    pub fn max_param(&self) -> i64 {
        self.circles.iter().map(|c| c.x.abs().max(c.y.abs()).max(c.r)).max().unwrap_or(0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        self.map(|c| Circle::new(c.x * k, c.y * k, c.r * k))
    }

    pub fn translated(&self, tx: i64, ty: i64) -> Self {
        self.map(|c| Circle::new(c.x + tx, c.y + ty, c.r))
    }

    pub fn reflected(&self) -> Self {
        self.map(|c| Circle::new(-c.x, c.y, c.r))
    }

    fn map(&self, f: impl Fn(&Circle) -> Circle) -> Self {
        CircleArrangement { circles: self.circles.iter().map(f).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRelation {
    Crossing,
    DisjointOutside,
    Nested,
    ExternallyTangent,
    InternallyTangent,
    Identical,
}

/// One of the two crossing points of circles `i < j`. `branch` is the sign of
/// its component along the left normal of the vector from center `i` to
/// center `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingRef {
    pub i: usize,
    pub j: usize,
    pub branch: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalCenter {
    Point(BigRational, BigRational),
    AtInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("circles {0} and {1} do not cross")]
    PairNotCrossing(usize, usize),
    #[error("degenerate scene: {0}")]
    DegenerateScene(String),
    #[error("scene is not connected")]
    Disconnected,
    #[error("circle {0} has a non-positive radius or a parameter beyond 2^28")]
    BadParameter(usize),
    #[error("precondition violated: {0}")]
    PrecondViolated(String),
    #[error("extracted map is invalid: {0}")]
    InvalidMap(MapError),
}

fn rat(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

fn check_params(idx: usize, c: &Circle) -> Result<(), GeomError> {
    if c.r <= 0 || c.r > MAX_PARAM || c.x.abs() > MAX_PARAM || c.y.abs() > MAX_PARAM {
        return Err(GeomError::BadParameter(idx));
    }
    Ok(())
}

fn dist2(c1: &Circle, c2: &Circle) -> i128 {
    let dx = (c2.x - c1.x) as i128;
    let dy = (c2.y - c1.y) as i128;
    dx * dx + dy * dy
}

pub fn pair_relation(c1: &Circle, c2: &Circle) -> PairRelation {
    let d2 = dist2(c1, c2);
    let (r1, r2) = (c1.r as i128, c2.r as i128);
    let outer = (r1 + r2) * (r1 + r2);
    let inner = (r1 - r2) * (r1 - r2);
    if d2 == 0 && r1 == r2 {
        PairRelation::Identical
    } else if d2 > outer {
        PairRelation::DisjointOutside
    } else if d2 == outer {
        PairRelation::ExternallyTangent
    } else if d2 > inner {
        PairRelation::Crossing
    } else if d2 == inner {
        PairRelation::InternallyTangent
    } else {
        PairRelation::Nested
    }
}

/// A line `a*x + b*y = c` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

fn offset(c: &Circle) -> i128 {
    let (x, y, r) = (c.x as i128, c.y as i128, c.r as i128);
    x * x + y * y - r * r
}

/// The radical axis of two circles with distinct centers.
pub fn radical_axis(c1: &Circle, c2: &Circle) -> Line {
    Line { a: big(2 * (c2.x - c1.x) as i128), b: big(2 * (c2.y - c1.y) as i128), c: big(offset(c2) - offset(c1)) }
}

/// Whether three lines pass through a common point or are all parallel.
pub fn lines_concurrent(l1: &Line, l2: &Line, l3: &Line) -> bool {
    let det = &l1.a * (&l2.b * &l3.c - &l2.c * &l3.b) - &l1.b * (&l2.a * &l3.c - &l2.c * &l3.a)
        + &l1.c * (&l2.a * &l3.b - &l2.b * &l3.a);
    det.is_zero()
}

pub fn radical_center(c1: &Circle, c2: &Circle, c3: &Circle) -> RadicalCenter {
    let l1 = radical_axis(c1, c2);
    let l2 = radical_axis(c1, c3);
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return RadicalCenter::AtInfinity;
    }
    let x = &l1.c * &l2.b - &l2.c * &l1.b;
    let y = &l1.a * &l2.c - &l2.a * &l1.c;
    RadicalCenter::Point(BigRational::new(x, det.clone()), BigRational::new(y, det))
}

fn require_crossing(cs: &[&Circle; 3]) -> Result<(), GeomError> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if pair_relation(cs[i], cs[j]) != PairRelation::Crossing {
            return Err(GeomError::PairNotCrossing(i, j));
        }
    }
    Ok(())
}

/// Sign of the power of the radical center with respect to the circles
/// (equal for all three); `None` when the center is at infinity.
fn radical_power_sign(c1: &Circle, c2: &Circle, c3: &Circle) -> Option<Ordering> {
    match radical_center(c1, c2, c3) {
        RadicalCenter::AtInfinity => None,
        RadicalCenter::Point(x, y) => Some(c1.power(&x, &y).cmp(&BigRational::zero())),
    }
}

/// Whether three pairwise crossing circles pass through a common point.
pub fn triple_concurrent(c1: &Circle, c2: &Circle, c3: &Circle) -> Result<bool, GeomError> {
    require_crossing(&[c1, c2, c3])?;
    Ok(radical_power_sign(c1, c2, c3) == Some(Ordering::Equal))
}

/// Krupp iff the radical center lies inside the circles.
pub fn krupp_predicate(c1: &Circle, c2: &Circle, c3: &Circle) -> Result<TripleType, GeomError> {
    require_crossing(&[c1, c2, c3])?;
    match radical_power_sign(c1, c2, c3) {
        Some(Ordering::Less) => Ok(TripleType::Krupp),
        Some(Ordering::Equal) => Err(GeomError::DegenerateScene("three circles through one point".into())),
        _ => Ok(TripleType::NonKrupp),
    }
}

/// The three pairwise radical axes of crossing circles are concurrent or parallel.
pub fn check_radical_concurrency(c1: &Circle, c2: &Circle, c3: &Circle) -> Result<bool, GeomError> {
    require_crossing(&[c1, c2, c3])?;
    Ok(lines_concurrent(&radical_axis(c1, c2), &radical_axis(c2, c3), &radical_axis(c1, c3)))
}

type Point = (BigRational, BigRational);

/// The crossing of `ci` and `cj` that lies on `w`, and the other crossing of
/// the pair.
fn witnessed_pair(ci: &Circle, cj: &Circle, w: &Circle) -> Result<(Point, Point), GeomError> {
    let (x, y) = match radical_center(ci, cj, w) {
        RadicalCenter::Point(x, y) => (x, y),
        RadicalCenter::AtInfinity => {
            return Err(GeomError::PrecondViolated("witness is coaxal with a circle pair".into()));
        }
    };
    if !ci.power(&x, &y).is_zero() {
        return Err(GeomError::PrecondViolated("witness misses the crossings of a pair".into()));
    }
    // Reflect across the line of centers.
    let (ax, ay) = (rat(ci.x as i128), rat(ci.y as i128));
    let (ux, uy) = (rat((cj.x - ci.x) as i128), rat((cj.y - ci.y) as i128));
    let (px, py) = (&x - &ax, &y - &ay);
    let t = (&px * &ux + &py * &uy) / (&ux * &ux + &uy * &uy);
    let (fx, fy) = (&ax + &t * &ux, &ay + &t * &uy);
    let other = (&fx + &fx - &x, &fy + &fy - &y);
    Ok(((x, y), other))
}

fn lifted_det(p: &[Point; 4]) -> BigRational {
    let rows: Vec<[BigRational; 4]> = p.iter().map(|(x, y)| [x.clone(), y.clone(), x * x + y * y, rat(1)]).collect();
    det4(&rows)
}

fn det4(m: &[[BigRational; 4]]) -> BigRational {
    let mut total = BigRational::zero();
    for col in 0..4 {
        let minor: Vec<[BigRational; 3]> = (1..4)
            .map(|r| {
                let mut row: [BigRational; 3] = Default::default();
                let mut k = 0;
                for c in 0..4 {
                    if c != col {
                        row[k] = m[r][c].clone();
                        k += 1;
                    }
                }
                row
            })
            .collect();
        let d3 = &minor[0][0] * (&minor[1][1] * &minor[2][2] - &minor[1][2] * &minor[2][1])
            - &minor[0][1] * (&minor[1][0] * &minor[2][2] - &minor[1][2] * &minor[2][0])
            + &minor[0][2] * (&minor[1][0] * &minor[2][1] - &minor[1][1] * &minor[2][0]);
        let term = &m[0][col] * d3;
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Whether four rational points lie on a common circle or line.
pub fn concyclic(p: &[Point; 4]) -> bool {
    lifted_det(p).is_zero()
}

/// Miquel's theorem as an oracle: `witness` passes through one crossing of
/// each consecutive pair of `cs`; the four other crossings must be concyclic.
pub fn check_miquel(cs: [&Circle; 4], witness: &Circle) -> Result<bool, GeomError> {
    let mut on = Vec::with_capacity(4);
    let mut off = Vec::with_capacity(4);
    for k in 0..4 {
        let (ci, cj) = (cs[k], cs[(k + 1) % 4]);
        if pair_relation(ci, cj) != PairRelation::Crossing {
            return Err(GeomError::PairNotCrossing(k, (k + 1) % 4));
        }
        let (p, q) = witnessed_pair(ci, cj, witness)?;
        on.push(p);
        off.push(q);
    }
    let all: Vec<&Point> = on.iter().chain(off.iter()).collect();
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            if all[a] == all[b] {
                return Err(GeomError::PrecondViolated("crossing points coincide".into()));
            }
        }
    }
    let off: [Point; 4] = off.try_into().expect("four points");
    Ok(concyclic(&off))
}

/// Sign of `p + q*sqrt(s)` for `s >= 0`.
fn sign_pq(p: &BigInt, q: &BigInt, s: &BigInt) -> Ordering {
    let sp = p.sign_cmp();
    let sq = if s.is_zero() { Ordering::Equal } else { q.sign_cmp() };
    if sq == Ordering::Equal || sp == sq {
        return sp;
    }
    if sp == Ordering::Equal {
        return sq;
    }
    // Opposite signs: the larger square wins.
    match (p * p).cmp(&(q * q * s)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Sign of `a + b*sqrt(s) + c*sqrt(t) + e*sqrt(s*t)` for `s, t >= 0`.
pub fn sign_quadratic(a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt, s: &BigInt, t: &BigInt) -> Ordering {
    // (a + b sqrt s) + sqrt t (c + e sqrt s)
    let sx = sign_pq(a, b, s);
    let sy = if t.is_zero() { Ordering::Equal } else { sign_pq(c, e, s) };
    if sy == Ordering::Equal || sx == sy {
        return sx;
    }
    if sx == Ordering::Equal {
        return sy;
    }
    // Compare X^2 with t*Y^2, both of the form u + v sqrt s.
    let two = BigInt::from(2);
    let u = a * a + b * b * s - t * (c * c + e * e * s);
    let v = &two * a * b - &two * t * c * e;
    match sign_pq(&u, &v, s) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

/// A crossing point seen from the center of the circle carrying it.
#[derive(Debug, Clone)]
struct Ray {
    /// `x = x0 + x1*sqrt(s)`, `y = y0 + y1*sqrt(s)`.
    x0: i128,
    x1: i128,
    y0: i128,
    y1: i128,
    s: i128,
    angle: f64,
    crossing: CrossingRef,
}

impl Ray {
    fn new(ci: &Circle, cj: &Circle, beta: i128, crossing: CrossingRef) -> Ray {
        let dx = (cj.x - ci.x) as i128;
        let dy = (cj.y - ci.y) as i128;
        let d2 = dx * dx + dy * dy;
        let (ri, rj) = (ci.r as i128, cj.r as i128);
        let k = d2 + ri * ri - rj * rj;
        let s = 4 * ri * ri * d2 - k * k;
        let root = (s as f64).sqrt();
        let fx = k as f64 * dx as f64 - beta as f64 * dy as f64 * root;
        let fy = k as f64 * dy as f64 + beta as f64 * dx as f64 * root;
        Ray { x0: k * dx, x1: -beta * dy, y0: k * dy, y1: beta * dx, s, angle: fy.atan2(fx), crossing }
    }

    fn upper(&self) -> bool {
        let s = big(self.s);
        match sign_pq(&big(self.y0), &big(self.y1), &s) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => sign_pq(&big(self.x0), &big(self.x1), &s) == Ordering::Greater,
        }
    }

    /// Exact counterclockwise comparison of directions, starting from the
    /// positive x axis.
    fn cmp_exact(&self, o: &Ray) -> Ordering {
        let (hu, hv) = (self.upper(), o.upper());
        if hu != hv {
            return if hu { Ordering::Less } else { Ordering::Greater };
        }
        let (ux0, ux1, uy0, uy1) = (big(self.x0), big(self.x1), big(self.y0), big(self.y1));
        let (vx0, vx1, vy0, vy1) = (big(o.x0), big(o.x1), big(o.y0), big(o.y1));
        let a = &ux0 * &vy0 - &uy0 * &vx0;
        let b = &ux1 * &vy0 - &uy1 * &vx0;
        let c = &ux0 * &vy1 - &uy0 * &vx1;
        let e = &ux1 * &vy1 - &uy1 * &vx1;
        // A positive cross product means `o` lies counterclockwise of `self`.
        sign_quadratic(&a, &b, &c, &e, &big(self.s), &big(o.s)).reverse()
    }
}

/// Gap below which float angles are not trusted.
const ANGLE_EPS: f64 = 1e-9;

fn check_scene(scene: &CircleArrangement) -> Result<Vec<Vec<usize>>, GeomError> {
    let n = scene.len();
    for (i, c) in scene.circles.iter().enumerate() {
        check_params(i, c)?;
    }
    let mut partners = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            match pair_relation(&scene.circles[i], &scene.circles[j]) {
                PairRelation::Crossing => {
                    partners[i].push(j);
                    partners[j].push(i);
                }
                PairRelation::DisjointOutside | PairRelation::Nested => {}
                rel => {
                    return Err(GeomError::DegenerateScene(format!("circles {i} and {j}: {rel:?}")));
                }
            }
        }
    }
    Ok(partners)
}

fn rays_of(scene: &CircleArrangement, i: usize, partners: &[usize]) -> Vec<Ray> {
    let ci = &scene.circles[i];
    let mut rays = Vec::with_capacity(2 * partners.len());
    for &j in partners {
        for branch in [1i8, -1] {
            let (lo, hi) = (i.min(j), i.max(j));
            // Seen from the higher circle, the left normal is reversed.
            let beta = if i == lo { branch } else { -branch } as i128;
            rays.push(Ray::new(ci, &scene.circles[j], beta, CrossingRef { i: lo, j: hi, branch }));
        }
    }
    rays
}

fn sort_rays(mut rays: Vec<Ray>) -> Result<Vec<Ray>, GeomError> {
    rays.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    let k = rays.len();
    let trusted = (0..k).all(|t| {
        let gap = if t + 1 < k {
            rays[t + 1].angle - rays[t].angle
        } else {
            rays[0].angle + std::f64::consts::TAU - rays[t].angle
        };
        gap > ANGLE_EPS
    });
    if trusted || k < 2 {
        return Ok(rays);
    }
    rays.sort_by(|a, b| a.cmp_exact(b));
    for t in 0..k {
        if rays[t].cmp_exact(&rays[(t + 1) % k]) == Ordering::Equal {
            return Err(GeomError::DegenerateScene("three circles through one point".into()));
        }
    }
    Ok(rays)
}

/// Counterclockwise cyclic order of the crossings on circle `i`, starting
/// from the direction of the positive x axis.
pub fn crossing_order(scene: &CircleArrangement, i: usize) -> Result<Vec<CrossingRef>, GeomError> {
    let partners = check_scene(scene)?;
    if partners[i].is_empty() {
        return Err(GeomError::Disconnected);
    }
    Ok(sort_rays(rays_of(scene, i, &partners[i]))?.into_iter().map(|r| r.crossing).collect())
}

/// The combinatorial arrangement realized by a scene of circles.
pub fn extract_arrangement(scene: &CircleArrangement) -> Result<Arrangement, GeomError> {
    extract_sequences(scene)?.to_arrangement().map_err(|e| match e {
        MapError::Disconnected => GeomError::Disconnected,
        other => GeomError::InvalidMap(other),
    })
}

/// Crossing sequences of a scene; crossing ids follow pair order and branch.
pub fn extract_sequences(scene: &CircleArrangement) -> Result<Sequences, GeomError> {
    let n = scene.len();
    let partners = check_scene(scene)?;
    let mut id = std::collections::HashMap::new();
    let mut crossings = Vec::new();
    for i in 0..n {
        for &j in partners[i].iter().filter(|&&j| j > i) {
            for branch in [1i8, -1] {
                id.insert(CrossingRef { i, j, branch }, crossings.len());
                // The branch sign is the orientation of the crossing.
                crossings.push(Crossing { a: i, b: j, left: branch > 0 });
            }
        }
    }
    let mut circles = Vec::with_capacity(n);
    for i in 0..n {
        if partners[i].is_empty() {
            return Err(GeomError::Disconnected);
        }
        let rays = sort_rays(rays_of(scene, i, &partners[i]))?;
        circles.push(rays.iter().map(|r| id[&r.crossing]).collect());
    }
    Ok(Sequences { circles, crossings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_relations() {
        let c = |x, y, r| Circle::new(x, y, r);
        assert_eq!(pair_relation(&c(0, 0, 2), &c(1, 0, 2)), PairRelation::Crossing);
        assert_eq!(pair_relation(&c(0, 0, 1), &c(3, 0, 1)), PairRelation::DisjointOutside);
        assert_eq!(pair_relation(&c(0, 0, 1), &c(2, 0, 1)), PairRelation::ExternallyTangent);
        assert_eq!(pair_relation(&c(0, 0, 3), &c(1, 0, 2)), PairRelation::InternallyTangent);
        assert_eq!(pair_relation(&c(0, 0, 5), &c(1, 0, 2)), PairRelation::Nested);
        assert_eq!(pair_relation(&c(4, 4, 5), &c(4, 4, 5)), PairRelation::Identical);
    }

    #[test]
    fn radical_center_by_hand() {
        let rc = radical_center(&Circle::new(0, 0, 1), &Circle::new(2, 0, 1), &Circle::new(0, 2, 1));
        assert_eq!(rc, RadicalCenter::Point(rat(1), rat(1)));
        let collinear = radical_center(&Circle::new(0, 0, 3), &Circle::new(2, 0, 3), &Circle::new(4, 0, 3));
        assert_eq!(collinear, RadicalCenter::AtInfinity);
    }

    #[test]
    fn sign_of_quadratic_forms() {
        let b = |v: i64| BigInt::from(v);
        // sqrt2 + sqrt3 - sqrt6 is about 0.697.
        assert_eq!(sign_quadratic(&b(0), &b(1), &b(1), &b(-1), &b(2), &b(3)), Ordering::Greater);
        assert_eq!(sign_quadratic(&b(0), &b(2), &b(-1), &b(0), &b(2), &b(8)), Ordering::Equal);
        assert_eq!(sign_quadratic(&b(-7), &b(0), &b(0), &b(1), &b(7), &b(7)), Ordering::Equal);
        assert_eq!(sign_quadratic(&b(-8), &b(1), &b(1), &b(1), &b(2), &b(3)), Ordering::Less);
    }

    #[test]
    fn exact_and_float_orders_agree() {
        let scene = CircleArrangement::new(vec![
            Circle::new(0, 0, 5),
            Circle::new(4, 1, 3),
            Circle::new(-1, 3, 4),
            Circle::new(2, -4, 3),
        ]);
        let partners = check_scene(&scene).unwrap();
        for i in 0..scene.len() {
            let mut rays = rays_of(&scene, i, &partners[i]);
            rays.sort_by(|a, b| a.angle.total_cmp(&b.angle));
            let float: Vec<_> = rays.iter().map(|r| r.crossing).collect();
            rays.sort_by(|a, b| a.cmp_exact(b));
            let mut exact: Vec<_> = rays.iter().map(|r| r.crossing).collect();
            let shift = exact.iter().position(|c| *c == float[0]).unwrap();
            exact.rotate_left(shift);
            assert_eq!(float, exact);
        }
    }

    #[test]
    fn concurrent_triple_is_degenerate() {
        // All three pass through (3, 4).
        let (a, b, c) = (Circle::new(0, 0, 5), Circle::new(6, 0, 5), Circle::new(3, 8, 4));
        assert!(triple_concurrent(&a, &b, &c).unwrap());
        let err = extract_arrangement(&CircleArrangement::new(vec![a, b, c])).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateScene(_)));
    }
}
