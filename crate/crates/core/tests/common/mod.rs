#![allow(dead_code)]

use dualized::lcalc::LFormula;
use dualized::term::{CutAnnot, Side, Term};
use dualized::{Context, Edge, Formula, Graph, Hyp, NodeId, Polarity, Sequent};
use proptest::prelude::*;

pub const NODES: [&str; 4] = ["n1", "n2", "n3", "n4"];

pub fn polarity() -> impl Strategy<Value = Polarity> {
    prop_oneof![Just(Polarity::Pos), Just(Polarity::Neg)]
}

pub fn node() -> impl Strategy<Value = NodeId> {
    prop::sample::select(NODES.to_vec()).prop_map(NodeId::new)
}

pub fn node_in(k: usize) -> impl Strategy<Value = NodeId> {
    prop::sample::select(NODES[..k].to_vec()).prop_map(NodeId::new)
}

pub fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::atom("a")),
        Just(Formula::atom("b")),
        Just(Formula::Unit(Polarity::Pos)),
        Just(Formula::Unit(Polarity::Neg)),
    ];
    leaf.prop_recursive(depth, 128, 2, |inner| {
        (polarity(), any::<bool>(), inner.clone(), inner).prop_map(|(p, imp, a, b)| {
            if imp {
                Formula::imp(p, a, b)
            } else {
                Formula::and(p, a, b)
            }
        })
    })
}

pub fn atom_free_formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::Unit(Polarity::Pos)), Just(Formula::Unit(Polarity::Neg))];
    leaf.prop_recursive(depth, 128, 2, |inner| {
        (polarity(), any::<bool>(), inner.clone(), inner).prop_map(|(p, imp, a, b)| {
            if imp {
                Formula::imp(p, a, b)
            } else {
                Formula::and(p, a, b)
            }
        })
    })
}

pub fn l_formula(depth: u32) -> impl Strategy<Value = LFormula> {
    let leaf = prop_oneof![
        Just(LFormula::atom("a")),
        Just(LFormula::atom("b")),
        Just(LFormula::Top),
        Just(LFormula::Bot),
    ];
    leaf.prop_recursive(depth, 128, 2, |inner| {
        (0..4u8, inner.clone(), inner).prop_map(|(k, a, b)| match k {
            0 => LFormula::imp(a, b),
            1 => LFormula::sub(a, b),
            2 => LFormula::and(a, b),
            _ => LFormula::or(a, b),
        })
    })
}

pub fn edge_in(k: usize) -> impl Strategy<Value = Edge> {
    (node_in(k), polarity(), node_in(k)).prop_map(|(a, p, b)| Edge { from: a, pol: p, to: b })
}

pub fn graph_in(k: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec(edge_in(k), 0..=max_edges).prop_map(Graph::from_edges)
}

pub fn graph() -> impl Strategy<Value = Graph> {
    graph_in(4, 5)
}

pub fn var() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "w"]).prop_map(String::from)
}

pub fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![var().prop_map(Term::Var), Just(Term::Triv)];
    leaf.prop_recursive(depth, 96, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::pair(a, b)),
            (any::<bool>(), inner.clone()).prop_map(|(d, t)| Term::inj(if d { Side::First } else { Side::Second }, t)),
            (var(), inner.clone()).prop_map(|(x, t)| Term::lam(x, t)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::copair(a, b)),
            (var(), inner.clone(), formula(2), node(), inner)
                .prop_map(|(x, l, f, n, r)| Term::cut(x, l, CutAnnot { formula: f, node: n }, r)),
        ]
    })
}

pub fn hyp() -> impl Strategy<Value = Hyp> {
    (prop::option::of(var()), polarity(), formula(3), node())
        .prop_map(|(v, p, f, n)| Hyp { var: v, pol: p, formula: f, node: n })
}

pub fn sequent() -> impl Strategy<Value = Sequent> {
    (graph(), prop::collection::vec(hyp(), 0..3), polarity(), formula(4), node())
        .prop_map(|(g, hs, p, f, n)| Sequent::new(g, Context::from_hyps(hs), p, f, n))
}
