//! Enumerate, realize and classify one class of arrangements.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_code, CanonicalCode};
use crate::classifier::{classify, ClassificationRecord, ClassifyError};
use crate::enumerate::{enumerate_class_with, ArrClass, EnumError, EnumOptions};
use crate::fixtures::{fixtures, Fixture};
use crate::flips::{neighbours, FlipGraph, Moves};
use crate::realizer::{
    extension_search, minimize_certificate, neighbor_seeded_search, random_search, Certificate, RealizationBudget,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Enumerate(#[from] EnumError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub budget: RealizationBudget,
    pub seed: u64,
    pub long_run: bool,
    /// Previously found certificates; each is re-verified before use.
    pub cache: Vec<Certificate>,
    pub fixtures: Vec<Fixture>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            budget: RealizationBudget::default(),
            seed: 1,
            long_run: false,
            cache: Vec::new(),
            fixtures: fixtures().to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub records: Vec<ClassificationRecord>,
    /// Certificates not present in the cache.
    pub new_certs: Vec<Certificate>,
    pub budget_exceeded: bool,
}

/// Flip graph (triangle and digon moves) induced on a set of codes.
pub fn induced_flip_graph(codes: &[CanonicalCode]) -> FlipGraph {
    let mut nodes = codes.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    let index: HashMap<CanonicalCode, u32> = nodes.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
    let edges: Vec<(u32, u32)> = nodes
        .par_iter()
        .enumerate()
        .flat_map_iter(|(u, code)| {
            let arr = code.to_arrangement().expect("stored code decodes");
            let mut out: Vec<(u32, u32)> = neighbours(&arr, Moves::TriangleDigon)
                .iter()
                .filter_map(|a| index.get(&canonical_code(a)).copied())
                .filter(|&v| (u as u32) < v)
                .map(|v| (u as u32, v))
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    FlipGraph { nodes, index, edges }
}

/// Certifies as many `codes` as the budget allows: cache replay, random
/// sampling, one-circle extension of certified deletions, then
/// neighbor-seeded perturbation.
pub fn realize_codes(
    codes: &[CanonicalCode],
    cache: &[Certificate],
    budget: &RealizationBudget,
    seed: u64,
) -> (HashMap<CanonicalCode, Certificate>, Vec<Certificate>, bool) {
    let start = Instant::now();
    let wanted: HashSet<&CanonicalCode> = codes.iter().collect();
    // Every verified cache entry can serve as an extension base.
    let mut library: HashMap<CanonicalCode, Certificate> =
        cache.par_iter().filter(|c| c.verify().is_ok()).map(|c| (c.code.clone(), c.clone())).collect();
    let mut certified: HashMap<CanonicalCode, Certificate> =
        library.iter().filter(|(code, _)| wanted.contains(code)).map(|(k, v)| (k.clone(), v.clone())).collect();
    let mut new_certs = Vec::new();
    let mut by_n: HashMap<usize, HashSet<CanonicalCode>> = HashMap::new();
    for c in codes.iter().filter(|c| !certified.contains_key(*c)) {
        by_n.entry(c.n()).or_default().insert(c.clone());
    }
    let random_budget = RealizationBudget { max_seconds: budget.max_seconds / 4.0, ..*budget };
    let mut ns: Vec<usize> = by_n.keys().copied().collect();
    ns.sort_unstable();
    for n in ns {
        for c in random_search(&by_n[&n], n, &random_budget, seed ^ n as u64) {
            let c = minimize_certificate(&c);
            certified.insert(c.code.clone(), c.clone());
            new_certs.push(c);
        }
        let open: HashSet<CanonicalCode> = by_n[&n].iter().filter(|c| !certified.contains_key(*c)).cloned().collect();
        library.extend(certified.iter().map(|(k, v)| (k.clone(), v.clone())));
        for c in extension_search(&open, &library, &random_budget, seed ^ n as u64) {
            let c = minimize_certificate(&c);
            certified.insert(c.code.clone(), c.clone());
            library.insert(c.code.clone(), c.clone());
            new_certs.push(c);
        }
    }
    let mut exceeded = false;
    if certified.len() < wanted.len() {
        let graph = induced_flip_graph(codes);
        let left = (budget.max_seconds - start.elapsed().as_secs_f64()).max(0.0);
        let nb = RealizationBudget { max_seconds: left, ..*budget };
        match neighbor_seeded_search(&graph, &mut certified, &nb, seed) {
            Ok(found) => new_certs.extend(found),
            Err(crate::realizer::RealizeError::BudgetExceeded { partial }) => {
                new_certs.extend(partial);
                exceeded = true;
            }
        }
    }
    (certified, new_certs, exceeded)
}

pub fn run(n: usize, class: ArrClass, opts: &PipelineOptions) -> Result<PipelineOutput, PipelineError> {
    let codes = enumerate_class_with(n, class, EnumOptions { long_run: opts.long_run, ..Default::default() })?;
    let (certified, new_certs, budget_exceeded) = realize_codes(&codes, &opts.cache, &opts.budget, opts.seed);
    let records = classify(&codes, &certified, &opts.fixtures)?;
    Ok(PipelineOutput { records, new_certs, budget_exceeded })
}
