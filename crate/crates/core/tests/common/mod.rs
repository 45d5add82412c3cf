#![allow(dead_code)]

use std::collections::BTreeSet;

use cpa_core::catalog::{EntryDoc, PairDoc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for randomized suites: `CPA_TEST_SEED`, or a fixed default.
pub fn seed() -> u64 {
    std::env::var("CPA_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240601)
}

const SCALARS: &[&str] = &["1", "-1", "2", "1/2", "-3/4", "7"];
const PARAM_SCALARS: &[&str] = &["alpha", "-alpha", "alpha^2-1", "(1+alpha)/(1-alpha)", "beta", "alpha*beta+1/3", "1/alpha"];

fn scalar(rng: &mut ChaCha8Rng, params: &[String]) -> String {
    if !params.is_empty() && rng.gen_bool(0.4) {
        let pool: Vec<&str> = PARAM_SCALARS
            .iter()
            .copied()
            .filter(|s| s.contains("alpha") <= params.iter().any(|p| p == "alpha") && s.contains("beta") <= params.iter().any(|p| p == "beta"))
            .collect();
        if let Some(s) = pool.choose(rng) {
            return s.to_string();
        }
    }
    SCALARS.choose(rng).unwrap().to_string()
}

fn entries(rng: &mut ChaCha8Rng, n: usize, params: &[String]) -> Vec<EntryDoc> {
    let mut seen = BTreeSet::new();
    let count = rng.gen_range(0..=n * n);
    let mut out = Vec::new();
    for _ in 0..count {
        let (i, j, k) = (rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(1..=n));
        if seen.insert((i, j, k)) {
            out.push(EntryDoc { c: scalar(rng, params), i, j, k });
        }
    }
    out
}

/// A well-formed random pair document (not necessarily associative).
pub fn random_doc(rng: &mut ChaCha8Rng, idx: usize) -> PairDoc {
    let n = rng.gen_range(1..=4);
    let mut params = Vec::new();
    if rng.gen_bool(0.5) {
        params.push("alpha".to_string());
        if rng.gen_bool(0.3) {
            params.push("beta".to_string());
        }
    }
    let has_alpha = !params.is_empty();
    // Denominators 1-alpha and alpha are declared so they stay nonzero.
    let exclusions = if has_alpha { vec!["alpha-1".to_string(), "alpha".to_string()] } else { Vec::new() };
    PairDoc {
        bullet: entries(rng, n, &params),
        dim: n,
        exclusions,
        name: format!("random-{idx}"),
        star: entries(rng, n, &params),
        params,
    }
}

pub fn random_docs(count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    (0..count).map(|i| serde_json::to_string(&random_doc(&mut rng, i)).unwrap()).collect()
}
