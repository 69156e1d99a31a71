//! Named non-circularizable arrangements and the shipped certificate caches.
//!
//! Fixture lines carry `name=`, `sym=` (automorphism group order) and
//! `proof=` (`theorem` when an executable filter covers it, `paper`
//! otherwise).

use std::sync::OnceLock;

use crate::canon::CanonicalCode;
use crate::realizer::Certificate;
use crate::store::{parse_arrs, parse_certs};

const FIXTURES: &str = include_str!("../data/fixtures.arrs");
const CERTS_CONNECTED_LE5: &str = include_str!("../data/certs_connected_le5.certs");
const CERTS_N6_IDF: &str = include_str!("../data/certs_n6_idf.certs");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub code: CanonicalCode,
    pub symmetry: usize,
    /// Non-circularizability rests on a hand proof rather than a filter.
    pub paper_proof: bool,
}

/// All named fixtures, in file order.
pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        parse_arrs(FIXTURES)
            .expect("shipped fixtures parse")
            .into_iter()
            .map(|e| Fixture {
                name: e.prop("name").expect("fixture name").to_string(),
                symmetry: e.prop("sym").and_then(|s| s.parse().ok()).expect("fixture symmetry"),
                paper_proof: e.prop("proof") == Some("paper"),
                code: e.code,
            })
            .collect()
    })
}

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    fixtures().iter().find(|f| f.name == name)
}

/// Fixtures whose non-circularizability is taken from hand proofs.
pub fn paper_fixtures() -> Vec<Fixture> {
    fixtures().iter().filter(|f| f.paper_proof).cloned().collect()
}

/// Certificates for the connected arrangements of at most five circles.
pub fn certificates_connected_le5() -> Vec<Certificate> {
    parse_certs(CERTS_CONNECTED_LE5).expect("shipped certificates parse")
}

/// Certificates for the intersecting digon-free arrangements of six circles.
pub fn certificates_n6_intersecting_digonfree() -> Vec<Certificate> {
    parse_certs(CERTS_N6_IDF).expect("shipped certificates parse")
}

/// All shipped certificates.
pub fn shipped_certificates() -> Vec<Certificate> {
    let mut all = certificates_connected_le5();
    all.extend(certificates_n6_intersecting_digonfree());
    all
}
