//! Subgraph embedding: an injective map of pattern vertices into the host
//! that carries every pattern edge onto a host edge (not necessarily induced).

use super::{Meter, SearchBudget, SearchReport};
use crate::bitset::VertexSet;
use crate::digraph::Digraph;

/// Finds an embedding of `pattern` into `host`. The witness maps pattern
/// vertex `i` to host vertex `witness[i]`.
pub fn embed(pattern: &Digraph, host: &Digraph, budget: SearchBudget) -> SearchReport<Vec<usize>> {
    let mut meter = Meter::new(budget);
    if pattern.n() > host.n() {
        meter.tick();
        return meter.finish(None);
    }
    let order = pattern_order(pattern);
    let hp = host.degree_profile();
    let pp = pattern.degree_profile();
    // Host vertices whose degrees can accommodate each pattern vertex.
    let allowed: Vec<VertexSet> = (0..pattern.n())
        .map(|x| {
            VertexSet::from_vertices(
                host.n(),
                (0..host.n()).filter(|&v| {
                    hp.out_degrees[v] >= pp.out_degrees[x] && hp.in_degrees[v] >= pp.in_degrees[x]
                }),
            )
        })
        .collect();
    let mut state = EmbedState {
        pattern,
        host,
        order: &order,
        allowed: &allowed,
        map: vec![usize::MAX; pattern.n()],
        used: VertexSet::new(host.n()),
    };
    let found = state.extend(0, &mut meter);
    let witness = found.then(|| state.map.clone());
    if let Some(m) = &witness {
        assert!(validate_embedding(pattern, host, m), "search produced an invalid embedding");
    }
    meter.finish(witness)
}

/// Injective and edge-preserving; independent of the search.
pub fn validate_embedding(pattern: &Digraph, host: &Digraph, map: &[usize]) -> bool {
    if map.len() != pattern.n() {
        return false;
    }
    let mut seen = vec![false; host.n()];
    for &v in map {
        if v >= host.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    pattern.edges().all(|(u, v)| host.has_edge(map[u], map[v]))
}

/// Pattern vertices ordered so each one is as constrained as possible when
/// placed: most edges to already-ordered vertices, then total degree, then id.
fn pattern_order(p: &Digraph) -> Vec<usize> {
    let n = p.n();
    let deg: Vec<usize> = (0..n).map(|v| p.out_degree(v) + p.in_degree(v)).collect();
    let mut placed = VertexSet::new(n);
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| (links[v], deg[v], std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed.insert(next);
        order.push(next);
        for u in p.out_neighbors(next).union(p.in_neighbors(next)).iter() {
            links[u] += 1;
        }
    }
    order
}

struct EmbedState<'a> {
    pattern: &'a Digraph,
    host: &'a Digraph,
    order: &'a [usize],
    allowed: &'a [VertexSet],
    map: Vec<usize>,
    used: VertexSet,
}

impl EmbedState<'_> {
    fn extend(&mut self, depth: usize, meter: &mut Meter) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let mut cand = self.allowed[x].difference(&self.used);
        for y in self.pattern.in_neighbors(x).iter() {
            if self.map[y] != usize::MAX {
                cand.intersect_with(self.host.out_neighbors(self.map[y]));
            }
        }
        for y in self.pattern.out_neighbors(x).iter() {
            if self.map[y] != usize::MAX {
                cand.intersect_with(self.host.in_neighbors(self.map[y]));
            }
        }
        for v in cand.iter() {
            if !meter.tick() {
                return false;
            }
            self.map[x] = v;
            self.used.insert(v);
            if self.extend(depth + 1, meter) {
                return true;
            }
            self.used.remove(v);
            self.map[x] = usize::MAX;
            if meter.aborted() {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        clique_minus_matching, d_r, f_r, paley, power_cycle, random_digraph, random_tournament,
        transitive,
    };
    use crate::solver::Outcome;

    fn run(p: &Digraph, h: &Digraph) -> Outcome {
        embed(p, h, SearchBudget::unlimited()).outcome
    }

    #[test]
    fn square_cycles_in_cyclic_tournaments() {
        assert_eq!(run(&power_cycle(2, 6).unwrap(), &d_r(2)), Outcome::Found);
        assert_eq!(run(&power_cycle(2, 5).unwrap(), &f_r(2).unwrap()), Outcome::Exhausted);
        assert_eq!(run(&power_cycle(2, 5).unwrap(), &d_r(4)), Outcome::Exhausted);
    }

    #[test]
    fn paley7_has_no_t4() {
        assert_eq!(run(&transitive(4), &paley(7).unwrap()), Outcome::Exhausted);
        assert_eq!(run(&transitive(3), &paley(7).unwrap()), Outcome::Found);
    }

    #[test]
    fn clique_minus_matching_containments() {
        assert_eq!(run(&power_cycle(2, 4).unwrap(), &clique_minus_matching(4).unwrap()), Outcome::Found);
        assert_eq!(
            run(&power_cycle(3, 4).unwrap(), &clique_minus_matching(4).unwrap()),
            Outcome::Exhausted
        );
    }

    #[test]
    fn self_embedding_is_found() {
        let graphs = [
            paley(11).unwrap(),
            d_r(3),
            f_r(2).unwrap(),
            power_cycle(3, 9).unwrap(),
            random_tournament(9, 4),
            random_digraph(10, 0.4, 1).unwrap(),
        ];
        for g in &graphs {
            let r = embed(g, g, SearchBudget::unlimited());
            assert_eq!(r.outcome, Outcome::Found);
        }
    }

    #[test]
    fn larger_pattern_is_exhausted() {
        assert_eq!(run(&transitive(5), &transitive(4)), Outcome::Exhausted);
    }

    #[test]
    fn monotone_under_edge_supersets() {
        let pattern = power_cycle(2, 6).unwrap();
        let base = d_r(2);
        for seed in 0..10 {
            let extra = random_digraph(6, 0.3, seed).unwrap();
            let mut b = crate::digraph::DigraphBuilder::from(&base);
            for (u, v) in extra.edges() {
                if !b.has_edge(u, v) {
                    b.add_edge(u, v).unwrap();
                }
            }
            assert_eq!(run(&pattern, &b.build()), Outcome::Found);
        }
    }

    #[test]
    fn validator_rejects_bad_maps() {
        let p = transitive(2);
        let h = transitive(3);
        assert!(validate_embedding(&p, &h, &[0, 2]));
        assert!(!validate_embedding(&p, &h, &[2, 0]));
        assert!(!validate_embedding(&p, &h, &[1, 1]));
        assert!(!validate_embedding(&p, &h, &[0]));
    }
}
