//! One-step reduction, normalization strategies and a confluence probe.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lcalc::fmt_path;
use crate::syntax::Formula;
use crate::term::{CutAnnot, Side, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    RImp,
    RImpBar,
    RAnd1,
    RAnd2,
    RAndBar1,
    RAndBar2,
    RRet,
    RBetaL,
    RBetaR,
}

impl RuleName {
    pub const ALL: [RuleName; 9] = [
        RuleName::RImp,
        RuleName::RImpBar,
        RuleName::RAnd1,
        RuleName::RAnd2,
        RuleName::RAndBar1,
        RuleName::RAndBar2,
        RuleName::RRet,
        RuleName::RBetaL,
        RuleName::RBetaR,
    ];
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A contraction site and the whole term after contracting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub path: Vec<usize>,
    pub rule: RuleName,
    pub result: Term,
}

impl Redex {
    /// `<rule> <path> <term>`.
    pub fn trace_line(&self) -> String {
        format!("{} {} {}", self.rule, fmt_path(&self.path), self.result)
    }
}

/// The cut formula of the contractum: the projection of the old one that the
/// new components are typed at.
fn project(ann: &CutAnnot, pick: impl FnOnce(&Formula, &Formula) -> Formula) -> CutAnnot {
    match &ann.formula {
        Formula::Imp(_, a, b) | Formula::And(_, a, b) => CutAnnot { formula: pick(a, b), node: ann.node.clone() },
        _ => ann.clone(),
    }
}

/// Top-level contractions of `t`, in rule order.
pub fn contract_top(t: &Term) -> Vec<(RuleName, Term)> {
    let Term::Cut(x, l, ann, r) = t else { return vec![] };
    let mut out = Vec::new();
    match (&**l, &**r) {
        (Term::Lam(y, t1), Term::CoPair(t2, t3)) => {
            let ann2 = project(ann, |_, b| b.clone());
            out.push((RuleName::RImp, Term::cut(x.clone(), t1.subst(y, t2), ann2, (**t3).clone())));
        }
        (Term::CoPair(t1, t2), Term::Lam(y, t3)) => {
            let ann2 = project(ann, |_, b| b.clone());
            out.push((RuleName::RImpBar, Term::cut(x.clone(), (**t2).clone(), ann2, t3.subst(y, t1))));
        }
        (Term::In(d, t0), Term::Pair(t1, t2)) => {
            let rule = d.pick(RuleName::RAnd1, RuleName::RAnd2);
            let ann2 = project(ann, |a, b| d.pick(a, b).clone());
            out.push((rule, Term::cut(x.clone(), (**t0).clone(), ann2, d.pick(t1, t2).as_ref().clone())));
        }
        (Term::Pair(t1, t2), Term::In(d, t0)) => {
            let rule = d.pick(RuleName::RAndBar1, RuleName::RAndBar2);
            let ann2 = project(ann, |a, b| d.pick(a, b).clone());
            out.push((rule, Term::cut(x.clone(), d.pick(t1, t2).as_ref().clone(), ann2, (**t0).clone())));
        }
        _ => {}
    }
    if matches!(&**r, Term::Var(v) if v == x) && !l.occurs_free(x) {
        out.push((RuleName::RRet, (**l).clone()));
    }
    if let (Term::Cut(y, t1, inner, t2), c) = (&**l, &**r) {
        if c.is_canonical() {
            out.push((RuleName::RBetaL, Term::cut(x.clone(), t1.subst(y, c), inner.clone(), t2.subst(y, c))));
        }
    }
    if let (c, Term::Cut(y, t1, inner, t2)) = (&**l, &**r) {
        if c.is_canonical() {
            out.push((RuleName::RBetaR, Term::cut(x.clone(), t1.subst(y, c), inner.clone(), t2.subst(y, c))));
        }
    }
    out
}

fn collect(t: &Term, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, RuleName, Term)>) {
    for (rule, contractum) in contract_top(t) {
        out.push((path.clone(), rule, contractum));
    }
    for (i, c) in t.children().into_iter().enumerate() {
        path.push(i);
        collect(c, path, out);
        path.pop();
    }
}

/// Every one-step successor, outermost sites first, then left to right.
pub fn step_all(t: &Term) -> Vec<Redex> {
    let mut sites = Vec::new();
    collect(t, &mut Vec::new(), &mut sites);
    sites
        .into_iter()
        .map(|(path, rule, contractum)| {
            let result = t.replace_at(&path, contractum).expect("site path is inside the term");
            Redex { path, rule, result }
        })
        .collect()
}

fn first_step(t: &Term) -> Option<Redex> {
    let mut sites = Vec::new();
    collect(t, &mut Vec::new(), &mut sites);
    let (path, rule, contractum) = sites.into_iter().next()?;
    let result = t.replace_at(&path, contractum).expect("site path is inside the term");
    Some(Redex { path, rule, result })
}

pub fn is_canonical(t: &Term) -> bool {
    t.is_canonical()
}

pub fn is_normal(t: &Term) -> bool {
    let mut sites = Vec::new();
    collect(t, &mut Vec::new(), &mut sites);
    sites.is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    /// Uniform choice among all redexes, from a seeded generator.
    Random(u64),
}

impl std::str::FromStr for Strategy {
    type Err = String;

    /// `lo` or `rand:SEED`.
    fn from_str(s: &str) -> Result<Strategy, String> {
        if s == "lo" {
            return Ok(Strategy::LeftmostOutermost);
        }
        match s.strip_prefix("rand:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(Strategy::Random(seed)),
            _ => Err(format!("unknown strategy `{s}` (expected `lo` or `rand:SEED`)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub trace: Vec<Redex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no normal form within {steps} steps; last term {last}")]
pub struct BudgetExceeded {
    pub last: Term,
    pub steps: usize,
}

pub fn normalize(t: &Term, max_steps: usize, strategy: Strategy) -> Result<Normalized, BudgetExceeded> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::LeftmostOutermost => None,
    };
    let mut cur = t.clone();
    let mut trace = Vec::new();
    loop {
        let next = match rng.as_mut() {
            None => first_step(&cur),
            Some(rng) => {
                let mut all = step_all(&cur);
                if all.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..all.len());
                    Some(all.swap_remove(i))
                }
            }
        };
        let Some(redex) = next else {
            return Ok(Normalized { term: cur, trace });
        };
        if trace.len() == max_steps {
            return Err(BudgetExceeded { last: cur, steps: trace.len() });
        }
        cur = redex.result.clone();
        trace.push(redex);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Confluent(Term),
    Diverged(Vec<Term>),
}

/// Normalizes with `samples` random strategies (seeds `seed..seed+samples`)
/// and with leftmost-outermost, then compares the normal forms.
pub fn confluence_probe(t: &Term, samples: usize, seed: u64, max_steps: usize) -> Result<Verdict, BudgetExceeded> {
    let reference = normalize(t, max_steps, Strategy::LeftmostOutermost)?.term;
    let mut forms = vec![reference.clone()];
    for i in 0..samples as u64 {
        let nf = normalize(t, max_steps, Strategy::Random(seed.wrapping_add(i)))?.term;
        if !forms.iter().any(|f| f.alpha_eq(&nf)) {
            forms.push(nf);
        }
    }
    if forms.len() == 1 {
        Ok(Verdict::Confluent(reference))
    } else {
        Ok(Verdict::Diverged(forms))
    }
}

/// The injection side of a rule, if it has one.
pub fn rule_side(rule: RuleName) -> Option<Side> {
    match rule {
        RuleName::RAnd1 | RuleName::RAndBar1 => Some(Side::First),
        RuleName::RAnd2 | RuleName::RAndBar2 => Some(Side::Second),
        _ => None,
    }
}
