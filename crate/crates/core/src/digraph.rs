//! Immutable bitset digraphs and the structural operations every other
//! module builds on.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;

/// Largest vertex count any constructor accepts.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {tail} -> {head}")]
    DuplicateEdge { tail: usize, head: usize },
    #[error("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { n: usize },
}

/// Mutable edge accumulator. Owned by one worker; frozen into a [`Digraph`]
/// by [`DigraphBuilder::build`].
#[derive(Debug, Clone)]
pub struct DigraphBuilder {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
}

impl DigraphBuilder {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(DigraphBuilder {
            n,
            out_adj: vec![VertexSet::new(n); n],
            in_adj: vec![VertexSet::new(n); n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].contains(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if !self.out_adj[u].insert(v) {
            return Err(GraphError::DuplicateEdge { tail: u, head: v });
        }
        self.in_adj[v].insert(u);
        Ok(())
    }

    pub fn build(self) -> Digraph {
        let g = Digraph {
            n: self.n,
            out_adj: self.out_adj,
            in_adj: self.in_adj,
        };
        g.assert_mirror_consistent();
        g
    }
}

impl From<&Digraph> for DigraphBuilder {
    fn from(g: &Digraph) -> Self {
        DigraphBuilder {
            n: g.n,
            out_adj: g.out_adj.clone(),
            in_adj: g.in_adj.clone(),
        }
    }
}

/// Most specific class a digraph belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Digraph,
    Oriented,
    Tournament,
    TransitiveTournament,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Digraph => "digraph",
            GraphClass::Oriented => "oriented",
            GraphClass::Tournament => "tournament",
            GraphClass::TransitiveTournament => "transitive_tournament",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// δ⁰: minimum over vertices of min(d⁺, d⁻).
    pub min_semi_degree: usize,
    /// δ: minimum over vertices of d⁺ + d⁻.
    pub min_total_degree: usize,
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

impl DegreeProfile {
    pub fn total(&self, v: usize) -> usize {
        self.out_degrees[v] + self.in_degrees[v]
    }

    pub fn is_regular(&self) -> bool {
        self.out_degrees
            .iter()
            .zip(&self.in_degrees)
            .all(|(o, i)| o == i)
    }

    pub fn is_semi_regular(&self) -> bool {
        self.out_degrees
            .iter()
            .zip(&self.in_degrees)
            .all(|(&o, &i)| o.abs_diff(i) <= 1)
    }
}

/// Directed graph on `[0, n)` with no loops and at most one edge per
/// ordered pair. Both directions of a pair may be present.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
}

impl Digraph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = DigraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Ok(DigraphBuilder::new(n)?.build())
    }

    /// Complete digraph: every ordered pair of distinct vertices is an edge.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let full = VertexSet::full(n);
        let adj: Vec<VertexSet> = (0..n)
            .map(|v| {
                let mut s = full.clone();
                s.remove(v);
                s
            })
            .collect();
        Ok(Digraph {
            n,
            out_adj: adj.clone(),
            in_adj: adj,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v)
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(VertexSet::len).sum()
    }

    /// Edges in ascending `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_oriented(&self) -> bool {
        (0..self.n).all(|v| self.out_adj[v].is_disjoint(&self.in_adj[v]))
    }

    /// Every pair of distinct vertices is joined in at least one direction.
    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|v| {
            let mut touched = self.out_adj[v].union(&self.in_adj[v]);
            touched.insert(v);
            touched.len() == self.n
        })
    }

    pub fn is_tournament(&self) -> bool {
        self.is_oriented() && self.is_semicomplete()
    }

    /// A directed 3-cycle `u → v → w → u`, if one exists.
    pub fn directed_triangle(&self) -> Option<(usize, usize, usize)> {
        for (u, v) in self.edges() {
            let closing = self.out_adj[v].intersection(&self.in_adj[u]);
            if let Some(w) = closing.first() {
                return Some((u, v, w));
            }
        }
        None
    }

    pub fn classify(&self) -> GraphClass {
        if !self.is_oriented() {
            GraphClass::Digraph
        } else if !self.is_semicomplete() {
            GraphClass::Oriented
        } else if self.directed_triangle().is_some() {
            GraphClass::Tournament
        } else {
            GraphClass::TransitiveTournament
        }
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let out_degrees: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let in_degrees: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let min_semi_degree = out_degrees
            .iter()
            .zip(&in_degrees)
            .map(|(&o, &i)| o.min(i))
            .min()
            .unwrap_or(0);
        let min_total_degree = out_degrees
            .iter()
            .zip(&in_degrees)
            .map(|(&o, &i)| o + i)
            .min()
            .unwrap_or(0);
        DegreeProfile {
            min_semi_degree,
            min_total_degree,
            out_degrees,
            in_degrees,
        }
    }

    /// Subgraph induced by `keep`, relabelled to `[0, |keep|)` in ascending
    /// original order. The second value maps new ids back to original ids.
    pub fn induced(&self, keep: &VertexSet) -> (Digraph, Vec<usize>) {
        let map = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let m = map.len();
        let mut out_adj = vec![VertexSet::new(m); m];
        let mut in_adj = vec![VertexSet::new(m); m];
        for (new_u, &u) in map.iter().enumerate() {
            for v in self.out_adj[u].intersection(keep).iter() {
                out_adj[new_u].insert(index[v]);
                in_adj[index[v]].insert(new_u);
            }
        }
        let g = Digraph {
            n: m,
            out_adj,
            in_adj,
        };
        g.assert_mirror_consistent();
        (g, map)
    }

    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
        }
    }

    /// The t-blow-up: vertex `v` becomes the block `v*t .. v*t + t`, copies
    /// of adjacent vertices are completely joined, blocks are independent.
    pub fn blow_up(&self, t: usize) -> Result<Digraph, GraphError> {
        assert!(t >= 1, "blow-up factor must be at least 1");
        let m = self.n * t;
        let mut b = DigraphBuilder::new(m)?;
        for (u, v) in self.edges() {
            for i in 0..t {
                for j in 0..t {
                    b.add_edge(u * t + i, v * t + j)?;
                }
            }
        }
        Ok(b.build())
    }

    /// `e(A, B)`: edges with tail in `a` and head in `b`; the sets may overlap.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| self.out_adj[v].intersection_len(b)).sum()
    }

    /// Whether every edge of `self` is also an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n
            && self
                .out_adj
                .iter()
                .zip(&other.out_adj)
                .all(|(a, b)| a.is_subset(b))
    }

    /// 64-bit FNV-1a hash of the canonical edge list: `n` as a little-endian
    /// u64, then every edge in ascending `(tail, head)` order as two
    /// little-endian u32 values. Stable across platforms and releases; not a
    /// cryptographic digest.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(&(self.n as u64).to_le_bytes());
        for (u, v) in self.edges() {
            feed(&(u as u32).to_le_bytes());
            feed(&(v as u32).to_le_bytes());
        }
        h
    }

    fn assert_mirror_consistent(&self) {
        for u in 0..self.n {
            assert!(!self.out_adj[u].contains(u), "self-loop at {u}");
            for v in self.out_adj[u].iter() {
                assert!(self.in_adj[v].contains(u), "mirror broken at {u}->{v}");
            }
            for v in self.in_adj[u].iter() {
                assert!(self.out_adj[v].contains(u), "mirror broken at {v}->{u}");
            }
        }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{paley, transitive};
    use proptest::prelude::*;

    fn c3() -> Digraph {
        Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Digraph::from_edge_list(3, &[(0, 0)]),
            Err(GraphError::SelfLoop { vertex: 0 })
        );
        assert_eq!(
            Digraph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Digraph::from_edge_list(3, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge { tail: 0, head: 1 })
        );
        assert!(matches!(
            Digraph::empty(MAX_VERTICES + 1),
            Err(GraphError::TooManyVertices { .. })
        ));
    }

    #[test]
    fn classification() {
        assert_eq!(c3().classify(), GraphClass::Tournament);
        let double = Digraph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(double.classify(), GraphClass::Digraph);
        assert_eq!(transitive(4).classify(), GraphClass::TransitiveTournament);
        let path = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.classify(), GraphClass::Oriented);
    }

    #[test]
    fn degree_profiles() {
        let p = c3().degree_profile();
        assert_eq!((p.min_semi_degree, p.min_total_degree), (1, 2));
        let k4 = Digraph::complete(4).unwrap().degree_profile();
        assert_eq!((k4.min_semi_degree, k4.min_total_degree), (3, 6));
        // Quadratic residues mod 7 are {1, 2, 4}: three out- and three in-neighbours.
        let p7 = paley(7).unwrap().degree_profile();
        assert_eq!(p7.min_semi_degree, 3);
        assert!(p7.is_regular());
    }

    #[test]
    fn induced_relabels_ascending() {
        let (g, map) = c3().induced(&VertexSet::from_vertices(3, [0, 1]));
        assert_eq!(map, vec![0, 1]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let (same, ident) = c3().induced(&VertexSet::full(3));
        assert_eq!(same, c3());
        assert_eq!(ident, vec![0, 1, 2]);
        let (tail, map) = c3().induced(&VertexSet::from_vertices(3, [1, 2]));
        assert_eq!(map, vec![1, 2]);
        assert_eq!(tail.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn reverse_flips() {
        let r = c3().reverse();
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 0), (2, 1)]);
        assert_eq!(r.reverse(), c3());
        let t = transitive(5).reverse();
        assert_eq!(t.classify(), GraphClass::TransitiveTournament);
        let p = paley(7).unwrap();
        assert_eq!(
            p.reverse().degree_profile().min_semi_degree,
            p.degree_profile().min_semi_degree
        );
    }

    #[test]
    fn blow_up_of_triangle() {
        let b = c3().blow_up(2).unwrap();
        assert_eq!(b.n(), 6);
        assert_eq!(b.classify(), GraphClass::Oriented);
        assert_eq!(b.degree_profile().min_semi_degree, 2);
        assert_eq!(c3().blow_up(1).unwrap(), c3());
        let p = paley(7).unwrap();
        assert_eq!(p.blow_up(3).unwrap().degree_profile().min_semi_degree, 9);
    }

    #[test]
    fn edges_between_counts() {
        let k = Digraph::complete(5).unwrap();
        let a = VertexSet::from_vertices(5, [0, 1]);
        let b = VertexSet::from_vertices(5, [2, 3, 4]);
        assert_eq!(k.edges_between(&a, &b), 6);
        assert_eq!(
            c3().edges_between(&VertexSet::from_vertices(3, [0]), &VertexSet::from_vertices(3, [1])),
            1
        );
    }

    #[test]
    fn fingerprint_depends_on_edges_only() {
        let a = c3();
        let b = Digraph::from_edge_list(3, &[(2, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), a.reverse().fingerprint());
        assert_ne!(
            Digraph::empty(3).unwrap().fingerprint(),
            Digraph::empty(4).unwrap().fingerprint()
        );
    }

    fn arb_oriented() -> impl Strategy<Value = Digraph> {
        (2usize..9).prop_flat_map(|n| {
            proptest::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |choice| {
                let mut b = DigraphBuilder::new(n).unwrap();
                let mut it = choice.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        match it.next().unwrap() {
                            0 => b.add_edge(u, v).unwrap(),
                            1 => b.add_edge(v, u).unwrap(),
                            _ => {}
                        }
                    }
                }
                b.build()
            })
        })
    }

    fn arb_digraph() -> impl Strategy<Value = Digraph> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let mut b = DigraphBuilder::new(n).unwrap();
                for u in 0..n {
                    for v in 0..n {
                        if u != v && bits[u * n + v] {
                            b.add_edge(u, v).unwrap();
                        }
                    }
                }
                b.build()
            })
        })
    }

    proptest! {
        #[test]
        fn reverse_is_involution(g in arb_digraph()) {
            prop_assert_eq!(g.reverse().reverse(), g.clone());
            prop_assert_eq!(g.reverse().edge_count(), g.edge_count());
        }

        #[test]
        fn blow_up_scales_semi_degree(g in arb_oriented(), t in 1usize..4) {
            let b = g.blow_up(t).unwrap();
            prop_assert!(b.is_oriented());
            prop_assert_eq!(b.degree_profile().min_semi_degree, t * g.degree_profile().min_semi_degree);
            if t >= 2 {
                prop_assert!(!b.is_tournament());
            }
        }

        #[test]
        fn partition_accounts_for_every_edge(g in arb_digraph(), mask in any::<u16>()) {
            let n = g.n();
            let a = VertexSet::from_vertices(n, (0..n).filter(|v| mask >> v & 1 == 1));
            let b = a.complement();
            let internal = g.edges_between(&a, &a) + g.edges_between(&b, &b);
            prop_assert_eq!(g.edges_between(&a, &b) + g.edges_between(&b, &a) + internal, g.edge_count());
            let direct: usize = a.iter().map(|v| g.out_neighbors(v).intersection_len(&b)).sum();
            prop_assert_eq!(g.edges_between(&a, &b), direct);
        }

        #[test]
        fn profile_matches_naive_scan(g in arb_digraph()) {
            let p = g.degree_profile();
            let n = g.n();
            for v in 0..n {
                let outs = (0..n).filter(|&w| g.has_edge(v, w)).count();
                let ins = (0..n).filter(|&w| g.has_edge(w, v)).count();
                prop_assert_eq!(p.out_degrees[v], outs);
                prop_assert_eq!(p.in_degrees[v], ins);
                prop_assert!(p.min_semi_degree <= outs.min(ins));
                prop_assert!(p.min_total_degree <= outs + ins);
            }
            prop_assert!(p.min_total_degree >= p.min_semi_degree);
            prop_assert!(p.min_total_degree <= 2 * (n - 1));
        }
    }
}
