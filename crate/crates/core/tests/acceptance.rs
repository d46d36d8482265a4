//! Runs the ten acceptance criteria in order and prints one line per
//! criterion. Exits non-zero when any criterion fails.

use std::time::{Duration, Instant};

use dualized::dil::{check_dil, excluded_middle_derivation, prove_dil, CutMode, DilDerivation, DilRule, DilWitness};
use dualized::generate::{
    all_edges, for_each_formula, for_each_graph, for_each_l_formula, node_names, term_depth, typed_terms, TermGen,
    TypedTerm,
};
use dualized::kripke::validate;
use dualized::lcalc::{d_formula, d_graph, graphs_isomorphic, l_formula, l_graph, LGraph};
use dualized::parse::parse_goal;
use dualized::reach::{closure_oracle, reaches};
use dualized::reduce::{confluence_probe, is_normal, normalize, step_all, RuleName, Strategy, Verdict};
use dualized::typing::{check, classical_check, erase_worlds};
use dualized::term::{CutAnnot, Term};
use dualized::{parse_sequent, parse_term, Formula, NodeId, Polarity, Sequent};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const EM_GOAL: &str = ". ; . |- + a /\\[-] (a ->[-] <+>) @ n
|- nu x . in1 (nu y . in2 <y, triv> * x : [a /\\[-] (a ->[-] <+>) @ n]) * x : [a /\\[-] (a ->[-] <+>) @ n]";

fn golden_reductions() -> Outcome {
    let cases = [
        ("\\z. nu y . (\\x. x) * <z, y> : [a ->[+] a @ n]", vec![RuleName::RImp, RuleName::RRet], "\\z. z"),
        (
            "nu z . (\\x. \\y. y) * <triv, <triv, z>> : [<+> ->[+] <+> ->[+] <+> @ n]",
            vec![RuleName::RImp, RuleName::RImp, RuleName::RRet],
            "triv",
        ),
    ];
    for (start, rules, end) in cases {
        let t = parse_term(start).map_err(|e| e.to_string())?;
        let nf = normalize(&t, 1000, Strategy::LeftmostOutermost).map_err(|e| e.to_string())?;
        let got: Vec<RuleName> = nf.trace.iter().map(|r| r.rule).collect();
        ensure!(got == rules, "{start}: rules {got:?}");
        ensure!(nf.term.alpha_eq(&parse_term(end).unwrap()), "{start}: ended at {}", nf.term);
    }
    Ok("2 + 3 steps, exact rules and normal forms".into())
}

fn excluded_middle(accepted: &mut Vec<TypedTerm>) -> Outcome {
    let (goal, term) = parse_goal(EM_GOAL).map_err(|e| e.to_string())?;
    check(&goal, &term).map_err(|e| e.to_string())?;
    ensure!(is_normal(&term), "the term has a redex");
    accepted.push(TypedTerm { goal, term });
    Ok("checks at + a /\\[-] (a ->[-] <+>) @ n and is normal".into())
}

fn soundness() -> Outcome {
    let mut corpus: Vec<DilDerivation> = Vec::new();
    let hand = [
        ". ; . |- + a ->[+] a @ n",
        ". ; . |- + a /\\[-] (a ->[-] <+>) @ n",
        ". ; . |- - a /\\[+] (a ->[+] <->) @ n",
        ". ; . |- + (a /\\[+] b) ->[+] (b /\\[+] a) @ n",
        ". ; . |- + (a /\\[-] b) ->[+] (b /\\[-] a) @ n",
        ". ; . |- + a ->[+] b ->[+] a @ n",
        ". ; . |- + <+> @ n",
        ". ; . |- - <-> @ n",
        ". ; + a @ n |- + a /\\[-] b @ n",
        "n <=[+] m ; + a @ n |- + a @ m",
        "n <=[-] m ; - a @ n |- - a @ m",
        ". ; + a ->[+] b @ n, + a @ n |- + b @ n",
        ". ; . |- + ((a ->[+] b) /\\[+] a) ->[+] b @ n",
        ". ; . |- + a ->[+] ((a ->[+] <->) ->[+] <->) @ n",
    ];
    for text in hand {
        let s = parse_sequent(text).map_err(|e| e.to_string())?;
        corpus.push(prove_dil(&s, 10).map_err(|e| format!("{text}: {e}"))?);
    }
    let mut g = TermGen::new(2024, &["a", "b"]);
    while corpus.len() < 40 {
        let mut s = g.goal();
        s.ctx = s.ctx.forget_vars();
        if let Ok(d) = prove_dil(&s, 8) {
            corpus.push(d);
        }
    }
    for a in ["a", "b"] {
        corpus.push(excluded_middle_derivation(&Formula::atom(a), &NodeId::new("n")));
    }
    for d in &corpus {
        check_dil(d, CutMode::Axiom).map_err(|e| format!("{}: {e}", d.conclusion))?;
        let atoms: Vec<String> = d.conclusion.atoms().into_iter().collect();
        ensure!(atoms.len() <= 2, "too many atoms in {}", d.conclusion);
        let v = validate(&d.conclusion, 3, &atoms).map_err(|e| e.to_string())?;
        ensure!(v.is_valid(), "{} has a countermodel", d.conclusion);
    }
    Ok(format!("{} proven sequents valid in all models with at most 3 worlds", corpus.len()))
}

fn preservation(terms: &[TypedTerm]) -> Outcome {
    ensure!(terms.len() >= 500, "only {} generated terms", terms.len());
    let mut steps = 0;
    for t in terms {
        ensure!(term_depth(&t.term) <= 6, "{} is too deep", t.term);
        for r in step_all(&t.term) {
            steps += 1;
            ensure!(check(&t.goal, &r.result).is_ok(), "{} --{}--> {} fails at {}", t.term, r.rule, r.result, t.goal);
        }
    }
    Ok(format!("{} terms, {steps} one-step successors re-check", terms.len()))
}

fn strong_normalization(terms: &[TypedTerm]) -> Outcome {
    let mut longest = 0;
    for (i, t) in terms.iter().enumerate() {
        for strategy in [Strategy::LeftmostOutermost, Strategy::Random(i as u64)] {
            let nf = normalize(&t.term, 100_000, strategy).map_err(|e| format!("{}: {e}", t.term))?;
            longest = longest.max(nf.trace.len());
        }
    }
    Ok(format!("all normalize under both strategies, longest {longest} steps"))
}

/// `t` with every cut annotation moved to one node, for classifying divergences.
fn without_cut_nodes(t: &Term) -> Term {
    let b = |u: &Term| Box::new(without_cut_nodes(u));
    match t {
        Term::Cut(x, l, a, r) => {
            let ann = CutAnnot { formula: a.formula.clone(), node: NodeId::new("_") };
            Term::Cut(x.clone(), b(l), ann, b(r))
        }
        Term::Pair(l, r) => Term::Pair(b(l), b(r)),
        Term::CoPair(l, r) => Term::CoPair(b(l), b(r)),
        Term::In(d, u) => Term::In(*d, b(u)),
        Term::Lam(x, u) => Term::Lam(x.clone(), b(u)),
        Term::Var(_) | Term::Triv => t.clone(),
    }
}

fn confluence(terms: &[TypedTerm]) -> Outcome {
    let (mut nodes_only, mut structural, mut first) = (0, 0, None);
    for (i, t) in terms.iter().enumerate() {
        match confluence_probe(&t.term, 10, 1000 + 10 * i as u64, 100_000).map_err(|e| e.to_string())? {
            Verdict::Confluent(_) => {}
            Verdict::Diverged(forms) => {
                let base = without_cut_nodes(&forms[0]);
                if forms.iter().all(|f| without_cut_nodes(f).alpha_eq(&base)) {
                    nodes_only += 1;
                } else {
                    structural += 1;
                }
                first.get_or_insert_with(|| format!("{} reaches {}", t.term, forms[0]));
            }
        }
    }
    match first {
        None => Ok(format!("{} terms, 11 normalizations each agree", terms.len())),
        Some(example) => Err(format!(
            "{} of {} terms diverge ({nodes_only} only in cut annotation nodes, {structural} structurally); first: {example}",
            nodes_only + structural,
            terms.len()
        )),
    }
}

fn round_trips() -> Outcome {
    let atoms = ["a", "b"];
    let (mut l_count, mut d_count, mut bad) = (0usize, 0usize, None);
    for_each_l_formula(&atoms, 4, |a| {
        l_count += 1;
        if bad.is_none() && l_formula(&d_formula(a)) != *a {
            bad = Some(format!("L(D({a}))"));
        }
    });
    for_each_formula(&atoms, 4, |a| {
        d_count += 1;
        if bad.is_none() && d_formula(&l_formula(a)) != *a {
            bad = Some(format!("D(L({a}))"));
        }
    });
    if let Some(b) = bad {
        return Err(format!("{b} is not the identity"));
    }
    let nodes = node_names(4);
    let mut graphs = 0;
    let mut failure = None;
    for_each_graph(&nodes, 4, |g| {
        graphs += 1;
        if failure.is_none() && !graphs_isomorphic(&d_graph(&l_graph(g)), g) {
            failure = Some(format!("D(L({g}))"));
        }
    });
    let pairs: Vec<(NodeId, NodeId)> =
        nodes.iter().flat_map(|a| nodes.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let mut l_graphs = 0;
    let mut stack: Vec<(usize, LGraph)> = vec![(0, Vec::new())];
    while let Some((start, g)) = stack.pop() {
        l_graphs += 1;
        if failure.is_none() && l_graph(&d_graph(&g)) != g {
            failure = Some(format!("L(D({g:?}))"));
        }
        if g.len() < 4 {
            for (i, p) in pairs.iter().enumerate().skip(start) {
                let mut next = g.clone();
                next.push(p.clone());
                stack.push((i, next));
            }
        }
    }
    if let Some(f) = failure {
        return Err(format!("{f} round trip failed"));
    }
    Ok(format!(
        "{l_count} L and {d_count} DIL formulas (all with at most 4 connectives), {l_graphs} L and {graphs} DIL graphs"
    ))
}

fn oracle_equivalence() -> Outcome {
    let nodes = node_names(4);
    let (mut graphs, mut queries, mut bad) = (0usize, 0usize, None);
    for_each_graph(&nodes, 4, |g| {
        graphs += 1;
        let closure = closure_oracle(g, &nodes);
        for a in &nodes {
            for p in Polarity::ALL {
                for b in &nodes {
                    queries += 1;
                    if bad.is_none() && reaches(g, a, p, b) != closure.contains(&(a.clone(), p, b.clone())) {
                        bad = Some(format!("{g}: {a} <={p}* {b}"));
                    }
                }
            }
        }
    });
    match bad {
        Some(b) => Err(format!("disagreement on {b}")),
        None => Ok(format!("{graphs} graphs over {} edge kinds, {queries} queries agree", all_edges(&nodes).len())),
    }
}

fn erasure(accepted: &[TypedTerm]) -> Outcome {
    for t in accepted {
        let ctx = erase_worlds(&t.goal.ctx);
        classical_check(&ctx, &t.term, t.goal.pol, &t.goal.formula).map_err(|e| format!("{}: {e}", t.term))?;
    }
    Ok(format!("{} accepted goals erase and check classically", accepted.len()))
}

const INVALID: [&str; 20] = [
    ". ; . |- + a @ n",
    ". ; . |- + b @ n",
    ". ; . |- - a @ n",
    ". ; . |- + <-> @ n",
    ". ; . |- - <+> @ n",
    ". ; + a @ n |- + b @ n",
    ". ; + a @ n |- - a @ n",
    ". ; - a @ n |- + a @ n",
    ". ; . |- + a ->[+] b @ n",
    ". ; . |- + a /\\[+] <+> @ n",
    ". ; . |- + (a ->[+] <->) /\\[-] a @ n",
    ". ; . |- + ((a ->[+] <->) ->[+] <->) ->[+] a @ n",
    ". ; . |- - a /\\[+] (a ->[-] <+>) @ n",
    "n <=[+] m ; + a @ m |- + a @ n",
    "n <=[+] m ; - a @ n |- - a @ m",
    ". ; + a ->[+] b @ n |- + b ->[+] a @ n",
    ". ; + a /\\[-] b @ n |- + a @ n",
    ". ; . |- + (a ->[+] b) ->[+] a @ n",
    ". ; . |- + a ->[-] b @ n",
    ". ; . |- + ((a ->[+] b) ->[+] a) ->[+] a @ n",
];

/// One-rule attempts at an invalid sequent; all must be rejected.
fn purported(s: &Sequent) -> Vec<DilDerivation> {
    let mut out = vec![DilDerivation::new(DilRule::Unit, s.clone(), DilWitness::None, vec![])];
    for k in 0..s.ctx.len() {
        out.push(DilDerivation::new(DilRule::Ax, s.clone(), DilWitness::Index(k), vec![]));
    }
    out
}

fn exclusivity() -> Outcome {
    for text in INVALID {
        let s = parse_sequent(text).map_err(|e| e.to_string())?;
        let atoms: Vec<String> = s.atoms().into_iter().collect();
        let v = validate(&s, 2, &atoms).map_err(|e| e.to_string())?;
        ensure!(!v.is_valid(), "{text}: no countermodel with 2 worlds");
        ensure!(prove_dil(&s, 8).is_err(), "{text}: prove_dil found a derivation");
        for d in purported(&s) {
            ensure!(check_dil(&d, CutMode::General).is_err(), "{text}: accepted a bogus {} derivation", d.rule);
        }
    }
    Ok(format!("{} invalid sequents refuted and not derivable at depth 8", INVALID.len()))
}

fn main() {
    let mut accepted = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, limit: Duration, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}, but took longer than {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {n:>2} {:<4} {name}: {detail} ({:.2?})", if ok { "PASS" } else { "FAIL" }, took);
    };
    let secs = Duration::from_secs;
    report(1, "golden reductions", secs(1), &mut golden_reductions);
    report(2, "excluded middle", secs(1), &mut || excluded_middle(&mut accepted));
    report(3, "soundness in small models", secs(60), &mut soundness);
    let start = Instant::now();
    let terms = typed_terms(42, 500, 6);
    let generation = start.elapsed();
    report(4, "type preservation", secs(120).saturating_sub(generation), &mut || preservation(&terms));
    report(5, "strong normalization", Duration::MAX, &mut || strong_normalization(&terms));
    report(6, "confluence", Duration::MAX, &mut || confluence(&terms));
    report(7, "translation round trips", secs(30), &mut round_trips);
    report(8, "reachability oracle", Duration::MAX, &mut oracle_equivalence);
    accepted.extend(terms.iter().cloned());
    report(9, "erasure", Duration::MAX, &mut || erasure(&accepted));
    report(10, "exclusivity", Duration::MAX, &mut exclusivity);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
