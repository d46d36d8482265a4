mod common;

use dualized::generate::{typed_terms, TypedTerm};
use dualized::reach::reaches;
use dualized::typing::{accepts, check, classical_check, erase_worlds, verify_trace, TypingRule};
use dualized::{Edge, Formula, Hyp, NodeId, Polarity, Sequent, Term};
use proptest::prelude::*;

fn sample(seed: u64) -> Vec<TypedTerm> {
    typed_terms(seed, 3, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn deterministic_and_replayable(seed in any::<u64>()) {
        for t in sample(seed) {
            let a = check(&t.goal, &t.term).unwrap();
            prop_assert_eq!(&a, &check(&t.goal, &t.term).unwrap());
            prop_assert!(verify_trace(&a, &t.term).is_ok());
        }
    }

    #[test]
    fn fresh_nodes_are_fresh(seed in any::<u64>()) {
        for t in sample(seed) {
            let trace = check(&t.goal, &t.term).unwrap();
            for (s, n) in trace.fresh_nodes() {
                prop_assert!(!s.graph.nodes().contains(n) && !s.ctx.nodes().contains(n), "{} in {}", n, s);
            }
        }
    }

    #[test]
    fn erasure(seed in any::<u64>()) {
        for t in sample(seed) {
            let ctx = erase_worlds(&t.goal.ctx);
            prop_assert!(classical_check(&ctx, &t.term, t.goal.pol, &t.goal.formula).is_ok(), "{}", t.term);
        }
    }

    #[test]
    fn weakening(seed in any::<u64>(), p in common::polarity(), a in common::formula(2), n in common::node()) {
        for t in sample(seed) {
            let goal = Sequent { ctx: t.goal.ctx.with(Hyp::named("fresh_y", p, a.clone(), n.clone())), ..t.goal.clone() };
            prop_assert!(accepts(&goal, &t.term));
        }
    }

    /// Moves every goal to `n2` above `n1`, then substitutes `n2` by a node
    /// `n1` reaches.
    #[test]
    fn node_substitution(seed in any::<u64>(), p1 in common::polarity(), to_n3 in any::<bool>()) {
        let (n, n1, n2, n3) = (NodeId::new("n"), NodeId::new("m1"), NodeId::new("m2"), NodeId::new("m3"));
        for t in sample(seed) {
            let mut goal = t.goal.subst_node(&n2, &n);
            goal.graph = goal.graph.with_edge(Edge { from: n1.clone(), pol: p1, to: n2.clone() });
            let tail = Edge { from: n1.clone(), pol: p1, to: n3.clone() };
            goal.graph = goal.graph.with_edge(tail);
            let term = t.term.subst_node(&n2, &n);
            prop_assert!(accepts(&goal, &term));
            let n4 = if to_n3 { &n3 } else { &n1 };
            prop_assert!(reaches(&goal.graph, &n1, p1, n4));
            prop_assert!(accepts(&goal.subst_node(n4, &n2), &term.subst_node(n4, &n2)));
        }
    }

    #[test]
    fn inversion(seed in any::<u64>()) {
        for t in sample(seed) {
            let trace = check(&t.goal, &t.term).unwrap();
            let (p, n) = (t.goal.pol, &t.goal.node);
            match (&t.term, &t.goal.formula) {
                (Term::Pair(..), Formula::And(_, a, b)) => {
                    prop_assert_eq!(trace.rule, TypingRule::And);
                    prop_assert_eq!((&trace.premises[0].sequent.formula, &trace.premises[0].sequent.node), (&**a, n));
                    prop_assert_eq!(&trace.premises[1].sequent.formula, &**b);
                }
                (Term::In(d, _), Formula::And(_, a, b)) => {
                    prop_assert_eq!(trace.rule, TypingRule::AndBar);
                    prop_assert_eq!(&trace.premises[0].sequent.formula, d.pick(&**a, &**b));
                    prop_assert_eq!(trace.premises[0].sequent.pol, p);
                }
                (Term::Lam(..), Formula::Imp(_, a, b)) => {
                    let s = &trace.premises[0].sequent;
                    prop_assert_eq!(&s.formula, &**b);
                    let last = s.ctx.get(s.ctx.len() - 1).unwrap();
                    prop_assert_eq!((&last.formula, last.pol, &last.node), (&**a, p, &s.node));
                    prop_assert!(s.graph.iter().any(|e| e.from == *n && e.to == s.node && e.pol == p));
                }
                (Term::CoPair(..), Formula::Imp(_, a, b)) => {
                    let (s1, s2) = (&trace.premises[0].sequent, &trace.premises[1].sequent);
                    prop_assert_eq!((&s1.formula, s1.pol), (&**a, p.flip()));
                    prop_assert_eq!((&s2.formula, s2.pol), (&**b, p));
                    prop_assert!(reaches(&t.goal.graph, n, p.flip(), &s1.node));
                }
                _ => {}
            }
        }
    }
}

#[test]
fn unbound_variables_are_errors() {
    let s = Sequent::closed(Polarity::Pos, Formula::atom("a"), "n");
    let e = check(&s, &Term::var("ghost")).unwrap_err();
    assert!(e.to_string().contains("ghost"), "{e}");
}
