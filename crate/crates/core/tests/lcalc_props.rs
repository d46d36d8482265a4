mod common;

use dualized::dil::prove_dil;
use dualized::generate::TermGen;
use dualized::lcalc::{
    activations, check_l, d_formula, d_graph, graphs_isomorphic, l_formula, l_graph, l_sequent, nonempty_right, prove_l,
};
use dualized::parse::parse_l_sequent;
use dualized::{Graph, NodeId};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn l_then_d(a in common::l_formula(6)) {
        prop_assert_eq!(l_formula(&d_formula(&a)), a);
    }

    #[test]
    fn d_then_l(a in common::formula(6)) {
        prop_assert_eq!(d_formula(&l_formula(&a)), a);
    }

    #[test]
    fn graphs(g in common::graph_in(4, 6)) {
        prop_assert!(graphs_isomorphic(&d_graph(&l_graph(&g)), &g));
        let lg = l_graph(&g);
        prop_assert_eq!(l_graph(&d_graph(&lg)), lg);
    }
}

#[test]
fn isomorphism_examples() {
    let e = |s: &str| dualized::parse::parse_graph(s).unwrap();
    assert!(graphs_isomorphic(&e("n1 <=[+] n2"), &e("n2 <=[-] n1")));
    assert!(graphs_isomorphic(&e("n1 <=[+] n2"), &e("n1 <=[+] n2")));
    assert!(!graphs_isomorphic(&e("n1 <=[+] n2"), &Graph::new()));
    assert_eq!(l_graph(&e("n2 <=[-] n1")), vec![(NodeId::new("n1"), NodeId::new("n2"))]);
}

/// Small derivable L sequents; each activation must be found by the DIL
/// prover within depth 8.
const L_SUITE: &[&str] = &[
    "n : a |-[] n : a",
    "n : a & b |-[] n : b & a",
    "n : a | b |-[] n : b | a",
    "|-[] n : a => a",
    "n : a |-[] n : b => a",
    "n : a => b, n : a |-[] n : b",
    "n : a |-[] n : a | b",
    "|-[] n : true",
    "n : false |-[] n : a",
    "n : a |-[] n : a -< b, n : b",
    "n : a |-[ (n, m) ] m : a",
    "n : a -< b |-[] n : a",
    "n : a & (a => b) |-[] n : b",
    "|-[] n : true -< a, n : a",
    "n : a, n : b |-[] n : a & b",
];

#[test]
fn l_suite_is_derivable_and_contained_in_dil() {
    for text in L_SUITE {
        let s = parse_l_sequent(text).unwrap();
        let d = prove_l(&s, 6).unwrap_or_else(|| panic!("no L derivation of {text}"));
        assert_eq!(check_l(&d), Ok(()));
        for act in activations(&s).unwrap() {
            assert!(prove_dil(&act, 8).is_ok(), "activation {act} of {text}");
        }
    }
}

#[test]
fn small_dil_theorems_are_l_theorems() {
    let mut g = TermGen::new(21, &["a", "b"]);
    let mut checked = 0;
    while checked < 40 {
        let mut s = g.goal();
        s.ctx = s.ctx.forget_vars();
        if s.formula.depth() > 2 || prove_dil(&s, 5).is_err() {
            continue;
        }
        let ls = nonempty_right(&l_sequent(&s));
        let d = prove_l(&ls, 8).unwrap_or_else(|| panic!("no L derivation of {ls} from {s}"));
        assert_eq!(check_l(&d), Ok(()));
        checked += 1;
    }
}
