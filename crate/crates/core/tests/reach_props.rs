mod common;

use common::*;
use dualized::reach::{closure_oracle, raise, reaches};
use dualized::{flip, Graph, NodeId, Polarity};
use proptest::prelude::*;

fn all_nodes(k: usize) -> Vec<NodeId> {
    NODES[..k].iter().map(|n| NodeId::new(*n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn agrees_with_oracle(g in prop::collection::vec(edge_in5(), 0..=6).prop_map(Graph::from_edges)) {
        let nodes = five();
        let closure = closure_oracle(&g, &nodes);
        for a in &nodes {
            for p in Polarity::ALL {
                for b in &nodes {
                    prop_assert_eq!(reaches(&g, a, p, b), closure.contains(&(a.clone(), p, b.clone())));
                }
            }
        }
    }

    #[test]
    fn flip_involution(g in graph(), a in node(), p in polarity(), b in node()) {
        prop_assert_eq!(reaches(&g, &a, p, &b), reaches(&g, &b, flip(p), &a));
    }

    #[test]
    fn transitivity(g in graph(), a in node(), b in node(), c in node(), p in polarity()) {
        if reaches(&g, &a, p, &b) && reaches(&g, &b, p, &c) {
            prop_assert!(reaches(&g, &a, p, &c));
        }
    }

    #[test]
    fn graph_weakening(g in graph(), e in edge_in(4), a in node(), p in polarity(), b in node()) {
        if reaches(&g, &a, p, &b) {
            prop_assert!(reaches(&g.with_edge(e), &a, p, &b));
        }
    }

    #[test]
    fn raising_the_lower_bound(
        g in graph_in(4, 3), g1 in graph_in(4, 3),
        n1 in node(), n2 in node(), p in polarity(),
        m in node(), q in polarity(), m2 in node(),
    ) {
        let n2 = if reaches(&g, &n1, p, &n2) { n2 } else { n1.clone() };
        if reaches(&g.concat(&g1), &m, q, &m2) {
            let raised = g.concat(&raise(&n1, &n2, p, &g1));
            prop_assert!(reaches(&raised, &m, q, &m2), "raised graph {}", raised);
        }
    }
}

fn five() -> Vec<NodeId> {
    let mut v = all_nodes(4);
    v.push(NodeId::new("n5"));
    v
}

fn edge_in5() -> impl Strategy<Value = dualized::Edge> {
    let n = || prop::sample::select(five());
    (n(), polarity(), n()).prop_map(|(a, p, b)| dualized::Edge { from: a, pol: p, to: b })
}

#[test]
fn absent_nodes_reach_themselves() {
    let g = Graph::new();
    let n = NodeId::new("ghost");
    assert!(reaches(&g, &n, Polarity::Pos, &n));
    assert!(reaches(&g, &n, Polarity::Neg, &n));
    assert!(!reaches(&g, &n, Polarity::Pos, &NodeId::new("other")));
}
