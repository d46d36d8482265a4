use dualized::generate::typed_terms;
use dualized::reduce::{normalize, step_all, RuleName, Strategy};
use dualized::typing::accepts;
use dualized::Term;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn preservation(seed in any::<u64>()) {
        for t in typed_terms(seed, 3, 6) {
            for r in step_all(&t.term) {
                prop_assert!(accepts(&t.goal, &r.result), "{} --{}--> {}", t.term, r.rule, r.result);
            }
        }
    }

    #[test]
    fn local_confluence(seed in any::<u64>()) {
        for t in typed_terms(seed, 3, 6) {
            let succ = step_all(&t.term);
            let forms: Vec<Term> = succ
                .iter()
                .map(|r| normalize(&r.result, 100_000, Strategy::LeftmostOutermost).unwrap().term)
                .collect();
            for f in forms.iter().skip(1) {
                prop_assert!(f.alpha_eq(&forms[0]), "{} vs {}", f, forms[0]);
            }
        }
    }

    #[test]
    fn terminates_under_both_strategies(seed in any::<u64>(), rseed in any::<u64>()) {
        for t in typed_terms(seed, 3, 6) {
            prop_assert!(normalize(&t.term, 100_000, Strategy::LeftmostOutermost).is_ok());
            prop_assert!(normalize(&t.term, 100_000, Strategy::Random(rseed)).is_ok());
        }
    }

    #[test]
    fn rret_side_condition(seed in any::<u64>()) {
        for t in typed_terms(seed, 3, 6) {
            for r in step_all(&t.term).into_iter().filter(|r| r.rule == RuleName::RRet) {
                let Some(Term::Cut(x, l, _, right)) = t.term.at_path(&r.path) else {
                    panic!("RRet at a non-cut");
                };
                prop_assert_eq!(&**right, &Term::var(x.clone()));
                prop_assert!(!l.occurs_free(x));
            }
        }
    }
}

#[test]
fn rret_blocked_when_bound_variable_escapes() {
    let t = dualized::parse_term("nu x . <x, triv> * x : [a @ n]").unwrap();
    assert!(step_all(&t).iter().all(|r| r.rule != RuleName::RRet));
}
