//! Transitive subtournaments `T_k`: a sequence `v_1 … v_k` with `v_i → v_j`
//! for every `i < j`.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::{Meter, SearchBudget, SearchReport, SolverError};
use crate::bitset::VertexSet;
use crate::digraph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitiveMode {
    /// First copy in lexicographic order of the sequence.
    One,
    /// Every copy, as ordered sequences and as vertex sets.
    Count,
    /// Majority-direction descent.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitiveReport {
    #[serde(flatten)]
    pub search: SearchReport<Vec<usize>>,
    /// Ordered embeddings of `T_k` (count mode only).
    pub ordered_count: Option<u64>,
    /// Distinct vertex sets spanning some `T_k` (count mode only).
    pub set_count: Option<u64>,
}

pub fn is_transitive_sequence(g: &Digraph, seq: &[usize]) -> bool {
    crate::solver::certificate::is_k_path(g, seq, seq.len())
}

/// Whether `g` contains a transitive `T_k`.
pub fn contains_transitive(g: &Digraph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut seq = Vec::with_capacity(k);
    first_transitive(g, k, &VertexSet::full(g.n()), &mut seq, &mut Meter::new(SearchBudget::unlimited()))
}

fn first_transitive(g: &Digraph, k: usize, cand: &VertexSet, seq: &mut Vec<usize>, meter: &mut Meter) -> bool {
    if seq.len() == k {
        return true;
    }
    // Fewer candidates than slots left: nothing to find here.
    if cand.len() < k - seq.len() {
        return false;
    }
    for v in cand.iter() {
        if !meter.tick() {
            return false;
        }
        seq.push(v);
        if first_transitive(g, k, &cand.intersection(g.out_neighbors(v)), seq, meter) {
            return true;
        }
        seq.pop();
    }
    false
}

pub fn find_transitive(
    g: &Digraph,
    k: usize,
    mode: TransitiveMode,
    budget: SearchBudget,
) -> Result<TransitiveReport, SolverError> {
    if k == 0 {
        return Err(SolverError::BadParams("k must be at least 1".into()));
    }
    let mut meter = Meter::new(budget);
    let report = match mode {
        TransitiveMode::One => {
            let mut seq = Vec::with_capacity(k);
            let found = first_transitive(g, k, &VertexSet::full(g.n()), &mut seq, &mut meter);
            TransitiveReport {
                search: meter.finish(found.then_some(seq)),
                ordered_count: None,
                set_count: None,
            }
        }
        TransitiveMode::Count => {
            let mut counter = Counter {
                g,
                k,
                seq: Vec::with_capacity(k),
                ordered: 0,
                sets: FxHashSet::default(),
                first: None,
            };
            counter.walk(&VertexSet::full(g.n()), &mut meter);
            let ordered = counter.ordered;
            let sets = counter.sets.len() as u64;
            let witness = counter.first.take();
            let mut search = meter.finish(witness);
            // Count mode answers the counting question; a zero count after a
            // complete walk is an absence proof.
            if search.outcome == super::Outcome::Found && meter.aborted() {
                search.outcome = super::Outcome::Budget;
            }
            let complete = !meter.aborted();
            TransitiveReport {
                search,
                ordered_count: complete.then_some(ordered),
                set_count: complete.then_some(sets),
            }
        }
        TransitiveMode::Greedy => {
            let seq = greedy_transitive(g, k)?;
            meter.tick();
            TransitiveReport {
                search: meter.finish(Some(seq)),
                ordered_count: None,
                set_count: None,
            }
        }
    };
    if let Some(w) = &report.search.witness {
        assert!(w.len() == k && is_transitive_sequence(g, w), "invalid transitive witness");
    }
    Ok(report)
}

/// Repeatedly takes the lowest remaining vertex and keeps whichever of its
/// out- or in-neighbourhoods inside the remaining set is larger; the vertex
/// joins the front (out side) or back (in side) of the sequence.
pub fn greedy_transitive(g: &Digraph, k: usize) -> Result<Vec<usize>, SolverError> {
    let mut rest = VertexSet::full(g.n());
    let mut front = Vec::new();
    let mut back = Vec::new();
    while front.len() + back.len() < k {
        let Some(v) = rest.first() else {
            return Err(SolverError::GreedyStuck {
                placed: front.len() + back.len(),
            });
        };
        rest.remove(v);
        let outs = rest.intersection(g.out_neighbors(v));
        let ins = rest.intersection(g.in_neighbors(v));
        if outs.len() >= ins.len() {
            front.push(v);
            rest = outs;
        } else {
            back.push(v);
            rest = ins;
        }
    }
    front.extend(back.into_iter().rev());
    debug_assert!(is_transitive_sequence(g, &front));
    Ok(front)
}

struct Counter<'a> {
    g: &'a Digraph,
    k: usize,
    seq: Vec<usize>,
    ordered: u64,
    sets: FxHashSet<Vec<usize>>,
    first: Option<Vec<usize>>,
}

impl Counter<'_> {
    fn walk(&mut self, cand: &VertexSet, meter: &mut Meter) {
        if self.seq.len() == self.k {
            self.ordered += 1;
            if self.first.is_none() {
                self.first = Some(self.seq.clone());
            }
            let mut set = self.seq.clone();
            set.sort_unstable();
            self.sets.insert(set);
            return;
        }
        for v in cand.iter() {
            if !meter.tick() {
                return;
            }
            self.seq.push(v);
            self.walk(&cand.intersection(self.g.out_neighbors(v)), meter);
            self.seq.pop();
        }
    }
}

/// All vertex sets spanning a `T_k`, each with one transitive ordering.
pub(crate) fn transitive_copies(g: &Digraph, k: usize) -> Vec<Vec<usize>> {
    let mut counter = Counter {
        g,
        k,
        seq: Vec::with_capacity(k),
        ordered: 0,
        sets: FxHashSet::default(),
        first: None,
    };
    let mut out = Vec::new();
    let mut seen = FxHashSet::default();
    collect(&mut counter, &VertexSet::full(g.n()), &mut seen, &mut out);
    out
}

fn collect(c: &mut Counter<'_>, cand: &VertexSet, seen: &mut FxHashSet<Vec<usize>>, out: &mut Vec<Vec<usize>>) {
    if c.seq.len() == c.k {
        let mut set = c.seq.clone();
        set.sort_unstable();
        if seen.insert(set) {
            out.push(c.seq.clone());
        }
        return;
    }
    for v in cand.iter() {
        c.seq.push(v);
        collect(c, &cand.intersection(c.g.out_neighbors(v)), seen, out);
        c.seq.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{paley, power_cycle, random_tournament, transitive};
    use crate::solver::Outcome;

    fn count(g: &Digraph, k: usize) -> (u64, u64) {
        let r = find_transitive(g, k, TransitiveMode::Count, SearchBudget::unlimited()).unwrap();
        (r.ordered_count.unwrap(), r.set_count.unwrap())
    }

    #[test]
    fn counts() {
        assert_eq!(count(&power_cycle(1, 3).unwrap(), 3), (0, 0));
        assert_eq!(count(&transitive(4), 3), (4, 4));
        assert_eq!(count(&paley(7).unwrap(), 4), (0, 0));
        // In the complete digraph every ordering of every set is transitive.
        assert_eq!(count(&Digraph::complete(4).unwrap(), 3), (24, 4));
    }

    #[test]
    fn one_mode() {
        let r = find_transitive(&paley(7).unwrap(), 3, TransitiveMode::One, SearchBudget::unlimited()).unwrap();
        assert_eq!(r.search.outcome, Outcome::Found);
        assert_eq!(r.search.witness.unwrap(), vec![0, 1, 2]);
        let r = find_transitive(&paley(7).unwrap(), 4, TransitiveMode::One, SearchBudget::unlimited()).unwrap();
        assert_eq!(r.search.outcome, Outcome::Exhausted);
        assert!(contains_transitive(&transitive(5), 5));
        assert!(!contains_transitive(&power_cycle(1, 3).unwrap(), 3));
    }

    #[test]
    fn greedy_descent() {
        // Any tournament on 2^(k-1) vertices yields T_k greedily.
        for seed in 0..20 {
            let g = random_tournament(16, seed);
            let seq = greedy_transitive(&g, 5).unwrap();
            assert!(is_transitive_sequence(&g, &seq));
        }
        assert!(matches!(
            greedy_transitive(&power_cycle(1, 3).unwrap(), 3),
            Err(SolverError::GreedyStuck { placed: 2 })
        ));
        assert!(matches!(
            find_transitive(&power_cycle(1, 3).unwrap(), 3, TransitiveMode::Greedy, SearchBudget::unlimited()),
            Err(SolverError::GreedyStuck { .. })
        ));
    }

    #[test]
    fn copies_are_distinct_sets() {
        let copies = transitive_copies(&transitive(5), 3);
        assert_eq!(copies.len(), 10);
        assert!(copies.iter().all(|c| is_transitive_sequence(&transitive(5), c)));
    }
}
