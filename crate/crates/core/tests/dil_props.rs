use dualized::dil::{check_dil, exchange, left_to_right, prove_dil, weaken, CutMode, DilDerivation, DilRule};
use dualized::generate::TermGen;
use dualized::kripke::validate;
use dualized::{Context, Hyp, Polarity, Sequent};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Proven random sequents, without variable names.
fn proven(seed: u64, want: usize) -> Vec<DilDerivation> {
    let mut g = TermGen::new(seed, &["a", "b"]);
    let mut out = Vec::new();
    while out.len() < want {
        let mut s = g.goal();
        s.ctx = s.ctx.forget_vars();
        if let Ok(d) = prove_dil(&s, 6) {
            out.push(d);
        }
    }
    out
}

#[test]
fn prover_output_replays() {
    for d in proven(1, 150) {
        assert_eq!(check_dil(&d, CutMode::Axiom), Ok(()), "{}", d.conclusion);
        assert!(!d.uses_rule(DilRule::Cut));
    }
}

#[test]
fn weakening_replays_and_keeps_shape() {
    let mut g = TermGen::new(77, &["a", "b"]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for d in proven(2, 200) {
        let p = Polarity::ALL[rng.gen_range(0..2)];
        let node = ["n", "m", "n%0", "n%1"][rng.gen_range(0..4)];
        let w = weaken(&d, Hyp::new(p, g.formula(2), node));
        assert_eq!(check_dil(&w, CutMode::Axiom), Ok(()), "{}", w.conclusion);
        assert_eq!(w.skeleton(), d.skeleton());
        assert_eq!(w.depth(), d.depth());
        assert_eq!(w.conclusion.ctx.len(), d.conclusion.ctx.len() + 1);
    }
}

#[test]
fn exchange_replays() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut g = TermGen::new(78, &["a", "b"]);
    for d in proven(3, 120) {
        let d = weaken(&weaken(&d, Hyp::new(Polarity::Pos, g.formula(1), "n")), Hyp::new(Polarity::Neg, g.formula(1), "n"));
        let mut perm: Vec<usize> = (0..d.conclusion.ctx.len()).collect();
        perm.shuffle(&mut rng);
        let x = exchange(&d, &perm).unwrap();
        assert_eq!(check_dil(&x, CutMode::Axiom), Ok(()));
        for (i, &j) in perm.iter().enumerate() {
            assert_eq!(x.conclusion.ctx.get(i), d.conclusion.ctx.get(j));
        }
    }
}

#[test]
fn left_to_right_replays() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut n = 0;
    let mut seed = 10;
    while n < 100 {
        for d in proven(seed, 40) {
            if d.conclusion.ctx.is_empty() || n == 100 {
                continue;
            }
            let k = rng.gen_range(0..d.conclusion.ctx.len());
            let hyp = d.conclusion.ctx.get(k).unwrap().clone();
            let l = left_to_right(&d, k).unwrap();
            assert_eq!(check_dil(&l, CutMode::Axiom), Ok(()), "{}", d.conclusion);
            assert!(matches!(l.rule, DilRule::AxCut | DilRule::AxCutBar));
            let s = &d.conclusion;
            let mut rest = s.ctx.entries.clone();
            rest.remove(k);
            rest.push(Hyp::new(s.pol.flip(), s.formula.clone(), s.node.clone()));
            let want = Sequent::new(s.graph.clone(), Context::from_hyps(rest), hyp.pol.flip(), hyp.formula, hyp.node);
            assert_eq!(l.conclusion, want);
            n += 1;
        }
        seed += 1;
    }
}

#[test]
fn checked_derivations_are_valid_in_small_models() {
    for d in proven(5, 60) {
        let atoms: Vec<String> = d.conclusion.atoms().into_iter().collect();
        let v = validate(&d.conclusion, 3, &atoms).unwrap();
        assert!(v.is_valid(), "{} has a countermodel", d.conclusion);
    }
}

/// Proving a sequent implies proving it with one more hypothesis, within the
/// same depth bound.
#[test]
fn extra_hypotheses_do_not_hurt_search() {
    let mut g = TermGen::new(79, &["a", "b"]);
    for d in proven(6, 60) {
        let s = &d.conclusion;
        let bigger = Sequent { ctx: s.ctx.with(Hyp::new(Polarity::Neg, g.formula(1), "n")), ..s.clone() };
        let found = prove_dil(&bigger, d.depth() + 1);
        assert!(found.is_ok(), "{bigger}");
    }
}
