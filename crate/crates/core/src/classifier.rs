//! Non-circularizability filters and the classification of code sets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{Arrangement, TripleType};
use crate::canon::{canonical_code, CanonicalCode};
use crate::fixtures::Fixture;
use crate::realizer::Certificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("precondition violated: {0}")]
    PrecondViolated(&'static str),
    #[error("{0} has a verified certificate but is flagged non-circularizable")]
    Contradiction(CanonicalCode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Realized,
    NonCirc,
    Open,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Realized => "REALIZED",
            Status::NonCirc => "NONCIRC",
            Status::Open => "OPEN",
        })
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "REALIZED" => Ok(Status::Realized),
            "NONCIRC" => Ok(Status::NonCirc),
            "OPEN" => Ok(Status::Open),
            _ => Err(format!("unknown status `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Reason {
    Certificate,
    ThmNonKruppTriangles,
    ThmKruppTriangles,
    ContainsNoncirc(String),
    FixturePaperProof(String),
    None,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Certificate => f.write_str("certificate"),
            Reason::ThmNonKruppTriangles => f.write_str("thm-nonkrupp-triangles"),
            Reason::ThmKruppTriangles => f.write_str("thm-krupp-triangles"),
            Reason::ContainsNoncirc(r) => write!(f, "contains-noncirc-subarrangement({r})"),
            Reason::FixturePaperProof(r) => write!(f, "fixture-paper-proof({r})"),
            Reason::None => f.write_str("-"),
        }
    }
}

impl FromStr for Reason {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')).map(str::to_string);
        match s {
            "certificate" => Ok(Reason::Certificate),
            "thm-nonkrupp-triangles" => Ok(Reason::ThmNonKruppTriangles),
            "thm-krupp-triangles" => Ok(Reason::ThmKruppTriangles),
            "-" => Ok(Reason::None),
            _ => inner("contains-noncirc-subarrangement(")
                .map(Reason::ContainsNoncirc)
                .or_else(|| inner("fixture-paper-proof(").map(Reason::FixturePaperProof))
                .ok_or_else(|| format!("unknown reason `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub code: CanonicalCode,
    pub status: Status,
    pub reason: Reason,
}

fn all_triangles(arr: &Arrangement, want: TripleType) -> bool {
    arr.triangle_triples().iter().all(|(_, [i, j, k])| arr.triple_type(*i, *j, *k) == want)
}

/// Every triangle is bounded by a NonKrupp triple.
pub fn filter_nonkrupp_triangles(arr: &Arrangement) -> Result<bool, ClassifyError> {
    if !arr.flags().digon_free {
        return Err(ClassifyError::PrecondViolated("arrangement has digons"));
    }
    Ok(all_triangles(arr, TripleType::NonKrupp))
}

/// Every triangle is bounded by a Krupp triple.
pub fn filter_krupp_triangles(arr: &Arrangement) -> Result<bool, ClassifyError> {
    if !arr.flags().intersecting {
        return Err(ClassifyError::PrecondViolated("arrangement is not intersecting"));
    }
    if arr.is_great() {
        return Err(ClassifyError::PrecondViolated("arrangement is great"));
    }
    Ok(all_triangles(arr, TripleType::Krupp))
}

/// The first theorem filter that fires, if any.
pub fn theorem_filters(arr: &Arrangement) -> Option<Reason> {
    if filter_nonkrupp_triangles(arr) == Ok(true) {
        return Some(Reason::ThmNonKruppTriangles);
    }
    if filter_krupp_triangles(arr) == Ok(true) {
        return Some(Reason::ThmKruppTriangles);
    }
    None
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether some set of circles of `arr` induces a connected sub-arrangement
/// isomorphic to `pattern`.
pub fn contains_subarrangement(arr: &Arrangement, pattern: &CanonicalCode) -> Result<bool, ClassifyError> {
    let k = pattern.n();
    if k >= arr.n() {
        return Err(ClassifyError::PrecondViolated("pattern must have fewer circles"));
    }
    let want_crossings = pattern.num_crossings();
    for keep in subsets(arr.n(), k) {
        let mut crossings = 0;
        for (a, &i) in keep.iter().enumerate() {
            for &j in &keep[a + 1..] {
                crossings += arr.crossings_between(i, j);
            }
        }
        if crossings != want_crossings {
            continue;
        }
        if let Ok(sub) = arr.restrict(&keep) {
            if &canonical_code(&sub) == pattern {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Classifies every code: realized by a verified certificate, else
/// non-circularizable by a theorem filter, a fixture, or a contained
/// non-circularizable sub-arrangement, else open. Records are sorted by code.
pub fn classify(
    codes: &[CanonicalCode],
    certs: &HashMap<CanonicalCode, Certificate>,
    fixtures: &[Fixture],
) -> Result<Vec<ClassificationRecord>, ClassifyError> {
    let fixture_of: HashMap<&CanonicalCode, &str> = fixtures.iter().map(|f| (&f.code, f.name.as_str())).collect();
    let mut codes = codes.to_vec();
    codes.sort_unstable();
    codes.dedup();
    let first: Vec<(CanonicalCode, Arrangement, Option<Reason>)> = codes
        .into_par_iter()
        .map(|code| {
            let arr = code.to_arrangement().expect("stored code decodes");
            let reason = theorem_filters(&arr)
                .or_else(|| fixture_of.get(&code).map(|name| Reason::FixturePaperProof(name.to_string())));
            (code, arr, reason)
        })
        .collect();
    // Known non-circularizable patterns: fixtures plus filter hits in the input.
    let mut patterns: Vec<(CanonicalCode, String)> =
        fixtures.iter().map(|f| (f.code.clone(), f.name.clone())).collect();
    for (code, _, reason) in &first {
        if reason.is_some() && !fixture_of.contains_key(code) {
            patterns.push((code.clone(), code.to_string()));
        }
    }
    let records: Vec<Result<ClassificationRecord, ClassifyError>> = first
        .into_par_iter()
        .map(|(code, arr, reason)| {
            let reason = reason.or_else(|| {
                patterns
                    .iter()
                    .filter(|(p, _)| p.n() < arr.n())
                    .find(|(p, _)| contains_subarrangement(&arr, p) == Ok(true))
                    .map(|(_, name)| Reason::ContainsNoncirc(name.clone()))
            });
            let certified = certs.get(&code).is_some_and(|c| c.verify().is_ok());
            match (certified, reason) {
                (true, Some(_)) => Err(ClassifyError::Contradiction(code)),
                (true, None) => {
                    Ok(ClassificationRecord { code, status: Status::Realized, reason: Reason::Certificate })
                }
                (false, Some(r)) => Ok(ClassificationRecord { code, status: Status::NonCirc, reason: r }),
                (false, None) => Ok(ClassificationRecord { code, status: Status::Open, reason: Reason::None }),
            }
        })
        .collect();
    records.into_iter().collect()
}

/// Counts per status.
pub fn tally(records: &[ClassificationRecord]) -> [usize; 3] {
    let mut t = [0; 3];
    for r in records {
        t[r.status as usize] += 1;
    }
    t
}
