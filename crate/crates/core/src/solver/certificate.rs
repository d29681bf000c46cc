//! Certificates for k-th powers of Hamilton cycles and paths, checked by a
//! plain double loop that shares nothing with the searches.

use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::digraph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cycle,
    Path,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cycle" => Ok(Mode::Cycle),
            "path" => Ok(Mode::Path),
            other => Err(format!("unknown mode `{other}` (expected cycle or path)")),
        }
    }
}

/// A vertex order claimed to carry a k-th power of a Hamilton cycle (cyclic
/// reading) or path (linear reading).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub k: usize,
    pub order: Vec<usize>,
}

/// Checks that `order` is a permutation of `[0, n)` and that every pair at
/// distance `1..=k` along it is an edge, cyclically in [`Mode::Cycle`].
pub fn validate_certificate(
    g: &Digraph,
    cert: &CycleCertificate,
    mode: Mode,
) -> Result<bool, SolverError> {
    let n = g.n();
    if cert.order.len() != n {
        return Err(SolverError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &v in &cert.order {
        if v >= n || seen[v] {
            return Err(SolverError::NotAPermutation);
        }
        seen[v] = true;
    }
    if mode == Mode::Cycle && n <= cert.k {
        return Ok(false);
    }
    for i in 0..n {
        for j in 1..=cert.k {
            let head = match mode {
                Mode::Cycle => (i + j) % n,
                Mode::Path if i + j < n => i + j,
                Mode::Path => break,
            };
            if !g.has_edge(cert.order[i], cert.order[head]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `seq` (distinct vertices, not necessarily spanning) is a k-path.
pub fn is_k_path(g: &Digraph, seq: &[usize], k: usize) -> bool {
    let mut seen = vec![false; g.n()];
    for &v in seq {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..seq.len()).all(|i| (i + 1..seq.len().min(i + k + 1)).all(|j| g.has_edge(seq[i], seq[j])))
}

/// Brute-force decider over every vertex order starting at vertex 0 (every
/// order, for paths). Only usable for tiny `n`; kept as a test oracle.
pub fn naive_ham_power_exists(g: &Digraph, k: usize, mode: Mode) -> bool {
    let n = g.n();
    if n == 0 || (mode == Mode::Cycle && n <= k) {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let fixed = usize::from(mode == Mode::Cycle);
    permute(&mut order, fixed, &mut |o| {
        validate_certificate(g, &CycleCertificate { k, order: o.to_vec() }, mode) == Ok(true)
    })
}

fn permute(a: &mut [usize], from: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if from + 1 >= a.len() {
        return check(a);
    }
    for i in from..a.len() {
        a.swap(from, i);
        if permute(a, from + 1, check) {
            a.swap(from, i);
            return true;
        }
        a.swap(from, i);
    }
    false
}
