use powham_core::constructions::{
    clique_minus_matching, d_r, extremal_total, f_r, gk, paley, power_cycle, random_digraph, random_tournament,
    transitive,
};
use powham_core::format::{dot_string, parse_graph_str, serialize_graph_string, FormatError};
use powham_core::{Digraph, GraphError};
use proptest::prelude::*;

fn families() -> Vec<Digraph> {
    vec![
        transitive(6),
        power_cycle(2, 9).unwrap(),
        paley(11).unwrap(),
        clique_minus_matching(5).unwrap(),
        extremal_total(3, 13).unwrap(),
        gk(2, 1, None).unwrap(),
        random_tournament(12, 3),
        d_r(3),
        f_r(2).unwrap(),
        Digraph::complete(5).unwrap(),
        Digraph::empty(4).unwrap(),
    ]
}

#[test]
fn families_round_trip() {
    for g in families() {
        let text = serialize_graph_string(&g);
        let back = parse_graph_str(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(serialize_graph_string(&back), text);
        assert_eq!(dot_string(&g).lines().count(), g.edge_count() + 2);
    }
}

#[test]
fn c3_serializes_sorted() {
    let text = serialize_graph_string(&power_cycle(1, 3).unwrap());
    assert_eq!(text, "powham v1\nn 3\ne 0 1\ne 1 2\ne 2 0\n");
}

#[test]
fn comments_are_ignored() {
    let g = parse_graph_str("powham v1\n# a comment\nn 2\n# another\ne 1 0\n").unwrap();
    assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 0)]);
}

#[test]
fn errors_carry_lines() {
    let missing_n = parse_graph_str("powham v1\ne 0 1\n").unwrap_err();
    assert!(matches!(missing_n, FormatError::Parse { line: 2, .. }), "{missing_n:?}");
    let self_loop = parse_graph_str("powham v1\nn 3\ne 0 1\ne 2 2\n").unwrap_err();
    assert!(matches!(
        self_loop,
        FormatError::Graph {
            line: 4,
            source: GraphError::SelfLoop { vertex: 2 }
        }
    ));
    let dup = parse_graph_str("powham v1\nn 3\ne 0 1\ne 0 1\n").unwrap_err();
    assert!(matches!(dup, FormatError::Graph { line: 4, source: GraphError::DuplicateEdge { .. } }));
    assert!(matches!(parse_graph_str("graph v1\nn 1\n").unwrap_err(), FormatError::Parse { line: 1, .. }));
}

proptest! {
    #[test]
    fn random_digraphs_round_trip(n in 1usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_digraph(n, p, seed).unwrap();
        let text = serialize_graph_string(&g);
        let back = parse_graph_str(&text).unwrap();
        prop_assert_eq!(back.fingerprint(), g.fingerprint());
        prop_assert_eq!(back, g);
    }
}
