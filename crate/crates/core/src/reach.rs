//! The reachability judgment `G |- n1 <=*p n2` and the `raise` transformation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::syntax::{Edge, Graph, NodeId, Polarity};

/// Decides `G |- from <=*pol to` by breadth-first search over oriented edges.
pub fn reaches(g: &Graph, from: &NodeId, pol: Polarity, to: &NodeId) -> bool {
    let (src, dst) = match pol {
        Polarity::Pos => (from, to),
        Polarity::Neg => (to, from),
    };
    if src == dst {
        return true;
    }
    let mut succ: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
    for e in g.iter() {
        let (a, b) = oriented(e);
        succ.entry(a).or_default().push(b);
    }
    let mut seen = BTreeSet::from([src]);
    let mut queue = VecDeque::from([src]);
    while let Some(n) = queue.pop_front() {
        for &m in succ.get(n).map(Vec::as_slice).unwrap_or(&[]) {
            if m == dst {
                return true;
            }
            if seen.insert(m) {
                queue.push_back(m);
            }
        }
    }
    false
}

/// Positive-direction endpoints of an edge.
fn oriented(e: &Edge) -> (&NodeId, &NodeId) {
    match e.pol {
        Polarity::Pos => (&e.from, &e.to),
        Polarity::Neg => (&e.to, &e.from),
    }
}

/// Least set of triples closed under the four reachability rules, computed by
/// naive iteration over `nodes_of(g)` plus `extra`.
pub fn closure_oracle(g: &Graph, extra: &[NodeId]) -> BTreeSet<(NodeId, Polarity, NodeId)> {
    let mut nodes = g.nodes();
    nodes.extend(extra.iter().cloned());
    let mut rel: BTreeSet<(NodeId, Polarity, NodeId)> = BTreeSet::new();
    for e in g.iter() {
        rel.insert((e.from.clone(), e.pol, e.to.clone()));
    }
    for n in &nodes {
        for p in Polarity::ALL {
            rel.insert((n.clone(), p, n.clone()));
        }
    }
    loop {
        let mut next = rel.clone();
        for (a, p, b) in &rel {
            next.insert((b.clone(), p.flip(), a.clone()));
            for (c, q, d) in &rel {
                if q == p && c == b {
                    next.insert((a.clone(), *p, d.clone()));
                }
            }
        }
        if next.len() == rel.len() {
            return rel;
        }
        rel = next;
    }
}

/// Rewrites `n1` to `n2` where it is the lower bound of an edge: `n1 <=p m`
/// becomes `n2 <=p m` and `m <=p' n1` becomes `m <=p' n2` when `p'` is the
/// flip of `p`. Other edges are unchanged. Single left-to-right pass with the
/// source rewrite tried first.
pub fn raise(n1: &NodeId, n2: &NodeId, p: Polarity, g: &Graph) -> Graph {
    Graph::from_edges(g.iter().map(|e| {
        if &e.from == n1 && e.pol == p {
            Edge { from: n2.clone(), ..e.clone() }
        } else if &e.to == n1 && e.pol == p.flip() {
            Edge { to: n2.clone(), ..e.clone() }
        } else {
            e.clone()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarity::{Neg, Pos};

    fn n(s: &str) -> NodeId {
        NodeId::new(s)
    }

    #[test]
    fn reach_examples() {
        let g = Graph::from_edges([Edge::new("n1", Pos, "n2")]);
        assert!(reaches(&g, &n("n1"), Pos, &n("n2")));
        assert!(reaches(&Graph::new(), &n("n"), Neg, &n("n")));
        assert!(reaches(&g, &n("n2"), Neg, &n("n1")));
        assert!(!reaches(&g, &n("n2"), Pos, &n("n1")));
        let g2 = Graph::from_edges([Edge::new("n1", Neg, "n2"), Edge::new("n3", Pos, "n2")]);
        assert!(reaches(&g2, &n("n3"), Pos, &n("n1")));
        assert!(!reaches(&g2, &n("n1"), Pos, &n("n3")));
    }

    #[test]
    fn oracle_examples() {
        let c = closure_oracle(&Graph::new(), &[n("n")]);
        assert_eq!(c, BTreeSet::from([(n("n"), Pos, n("n")), (n("n"), Neg, n("n"))]));
        let c = closure_oracle(&Graph::from_edges([Edge::new("a", Pos, "b")]), &[]);
        assert!(c.contains(&(n("a"), Pos, n("b"))));
        assert!(c.contains(&(n("b"), Neg, n("a"))));
        assert!(c.contains(&(n("a"), Pos, n("a"))));
        assert!(!c.contains(&(n("b"), Pos, n("a"))));
    }

    #[test]
    fn raise_clauses() {
        for p in Polarity::ALL {
            assert!(raise(&n("n1"), &n("n2"), p, &Graph::new()).is_empty());
            let g = Graph::from_edges([Edge::new("n1", p, "m")]);
            assert_eq!(raise(&n("n1"), &n("n2"), p, &g), Graph::from_edges([Edge::new("n2", p, "m")]));
            let g = Graph::from_edges([Edge::new("m", p.flip(), "n1")]);
            assert_eq!(raise(&n("n1"), &n("n2"), p, &g), Graph::from_edges([Edge::new("m", p.flip(), "n2")]));
            let g = Graph::from_edges([Edge::new("m", p, "k")]);
            assert_eq!(raise(&n("n1"), &n("n2"), p, &g), g);
        }
        let g = Graph::from_edges([Edge::new("n1", Pos, "n1")]);
        assert_eq!(raise(&n("n1"), &n("n2"), Pos, &g), Graph::from_edges([Edge::new("n2", Pos, "n1")]));
    }
}
