//! `T_k`-factors: partitions of the vertex set into transitive `k`-sets.

use super::transitive::{is_transitive_sequence, transitive_copies};
use super::{Meter, SearchBudget, SearchReport, SolverError};
use crate::digraph::Digraph;

/// Exact cover over the `T_k` copies of `g`, branching on the lowest
/// uncovered vertex. Each part of the witness is listed in transitive order.
pub fn transitive_factor(
    g: &Digraph,
    k: usize,
    budget: SearchBudget,
) -> Result<SearchReport<Vec<Vec<usize>>>, SolverError> {
    let n = g.n();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(SolverError::BadParams(format!("k = {k} must divide n = {n}")));
    }
    let mut meter = Meter::new(budget);
    // Any copy covering the lowest uncovered vertex has it as its minimum.
    let mut by_min: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for c in transitive_copies(g, k) {
        let m = *c.iter().min().expect("k >= 1");
        by_min[m].push(c);
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(n / k);
    let found = cover(&by_min, &mut covered, &mut chosen, &mut meter);
    let witness = found.then_some(chosen);
    if let Some(parts) = &witness {
        let mut seen = vec![false; n];
        for p in parts {
            assert!(p.len() == k && is_transitive_sequence(g, p), "invalid factor part");
            for &v in p {
                assert!(!seen[v], "factor parts overlap");
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "factor does not cover every vertex");
    }
    Ok(meter.finish(witness))
}

fn cover(
    by_min: &[Vec<Vec<usize>>],
    covered: &mut [bool],
    chosen: &mut Vec<Vec<usize>>,
    meter: &mut Meter,
) -> bool {
    let Some(v) = covered.iter().position(|&c| !c) else {
        return true;
    };
    for copy in &by_min[v] {
        if copy.iter().any(|&u| covered[u]) {
            continue;
        }
        if !meter.tick() {
            return false;
        }
        copy.iter().for_each(|&u| covered[u] = true);
        chosen.push(copy.clone());
        if cover(by_min, covered, chosen, meter) {
            return true;
        }
        chosen.pop();
        copy.iter().for_each(|&u| covered[u] = false);
        if meter.aborted() {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{paley, power_cycle, transitive};
    use crate::solver::Outcome;

    #[test]
    fn transitive_six_tiles() {
        let r = transitive_factor(&transitive(6), 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(r.outcome, Outcome::Found);
        assert_eq!(r.witness.unwrap(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn triangle_does_not_tile() {
        let r = transitive_factor(&power_cycle(1, 3).unwrap(), 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(r.outcome, Outcome::Exhausted);
    }

    #[test]
    fn divisibility_required() {
        assert!(transitive_factor(&paley(7).unwrap(), 3, SearchBudget::unlimited()).is_err());
    }
}
