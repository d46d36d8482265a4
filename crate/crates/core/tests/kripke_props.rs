mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use dualized::generate::{for_each_graph, node_names};
use dualized::kripke::{
    enumerate_interpreters, enumerate_models, interp_formula, interp_graph, interp_l_formula, validate, KripkeModel,
    Validity,
};
use dualized::lcalc::l_formula;
use dualized::reach::reaches;
use dualized::{parse_sequent, Polarity};
use proptest::prelude::*;

fn models() -> &'static [KripkeModel] {
    static M: OnceLock<Vec<KripkeModel>> = OnceLock::new();
    M.get_or_init(|| enumerate_models(3, &["a".to_string(), "b".to_string()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn monotonicity(a in common::formula(3)) {
        for m in models() {
            for (w, v) in m.relation_pairs() {
                if interp_formula(m, w, &a).unwrap() {
                    prop_assert!(interp_formula(m, v, &a).unwrap(), "{} at {} but not {}\n{}", a, w, v, m);
                }
            }
        }
    }

    #[test]
    fn dil_and_l_interpretations_agree(a in common::formula(3)) {
        let la = l_formula(&a);
        for m in models() {
            for w in 0..m.worlds() {
                prop_assert_eq!(interp_formula(m, w, &a).unwrap(), interp_l_formula(m, w, &la).unwrap());
            }
        }
    }
}

#[test]
fn reachability_is_interpreted_by_the_relation() {
    let nodes = node_names(3);
    let small = enumerate_models(2, &[]);
    for_each_graph(&nodes, 3, |g| {
        for m in &small {
            for n in enumerate_interpreters(&nodes, m) {
                if !interp_graph(m, &n, g).unwrap() {
                    continue;
                }
                for a in &nodes {
                    for b in &nodes {
                        if reaches(g, a, Polarity::Pos, b) {
                            assert!(m.related(n[a], n[b]), "{g}: {a} -> {b}");
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn enumeration_sizes() {
    assert_eq!(enumerate_models(1, &["a".to_string()]).len(), 2);
    let preorders: usize = (1..=3).map(|k| enumerate_models(k, &[]).iter().filter(|m| m.worlds() == k).count()).sum();
    assert_eq!(preorders, 1 + 4 + 29);
    let one = &enumerate_models(1, &[])[0];
    assert_eq!(enumerate_interpreters(&node_names(4), one).len(), 1);
    for m in models() {
        assert!(m.is_preorder() && m.is_monotone());
    }
}

#[test]
fn countermodels_replay() {
    let cases = [". ; . |- + a @ n", ". ; + a ->[+] b @ n |- + b @ n", "n <=[+] m ; + b @ m |- + b @ n"];
    for text in cases {
        let s = parse_sequent(text).unwrap();
        let atoms: Vec<String> = s.atoms().into_iter().collect();
        let Validity::Countermodel(c) = validate(&s, 2, &atoms).unwrap() else { panic!("{text} is valid") };
        assert!(c.refutes(&s));
        let printed = c.to_string();
        let worlds: BTreeMap<&str, usize> =
            printed.lines().filter_map(|l| l.strip_prefix("N ")).map(|l| l.split_once(' ').unwrap()).map(|(a, b)| (a, b.parse().unwrap())).collect();
        assert_eq!(worlds.len(), s.node_list().len());
    }
}
