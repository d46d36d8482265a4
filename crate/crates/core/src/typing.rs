//! Type checking for DTT: the intuitionistic rules with graphs and nodes, the
//! classical rules without them, and the derived case eliminator.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::lcalc::fmt_path;
use crate::reach::reaches;
use crate::syntax::{fresh_name, fresh_node, Edge, Formula, Hyp, NodeId, Polarity, Sequent};
use crate::term::{CutAnnot, Side, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypingRule {
    Ax,
    Unit,
    And,
    AndBar,
    Imp,
    ImpBar,
    Cut,
}

impl fmt::Display for TypingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypingRule::Ax => "Ax",
            TypingRule::Unit => "Unit",
            TypingRule::And => "And",
            TypingRule::AndBar => "AndBar",
            TypingRule::Imp => "Imp",
            TypingRule::ImpBar => "ImpBar",
            TypingRule::Cut => "Cut",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypingWitness {
    None,
    /// Context position of the variable's entry.
    Index(usize),
    Side(Side),
    Fresh(NodeId),
    /// Node at which the components of ImpBar are checked.
    Node(NodeId),
    /// Node at which the cut formula is checked.
    CutNode(NodeId),
}

/// Evidence produced by [`check`]: one node per term constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypingTrace {
    pub rule: TypingRule,
    pub sequent: Sequent,
    pub witness: TypingWitness,
    pub premises: Vec<TypingTrace>,
}

impl TypingTrace {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(TypingTrace::size).sum::<usize>()
    }

    /// Every Imp node with its fresh node and the graph and context it extends.
    pub fn fresh_nodes(&self) -> Vec<(&Sequent, &NodeId)> {
        let mut out = Vec::new();
        if let TypingWitness::Fresh(n) = &self.witness {
            out.push((&self.sequent, n));
        }
        for p in &self.premises {
            out.extend(p.fresh_nodes());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeErrorKind {
    UnboundVariable(String),
    DuplicateVariable(String),
    AxMismatch { var: String, entry: String, goal: String },
    Unreachable { from: NodeId, pol: Polarity, to: NodeId },
    NoImpBarWitness { tried: Vec<NodeId> },
    GoalShape { rule: TypingRule, goal: String },
    TraceMismatch(String),
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeErrorKind::UnboundVariable(x) => write!(f, "unbound variable `{x}`"),
            TypeErrorKind::DuplicateVariable(x) => write!(f, "variable `{x}` bound twice in the context"),
            TypeErrorKind::AxMismatch { var, entry, goal } => {
                write!(f, "`{var}` has `{entry}` but the goal is `{goal}`")
            }
            TypeErrorKind::Unreachable { from, pol, to } => write!(f, "{to} is not reachable from {from} at {pol}"),
            TypeErrorKind::NoImpBarWitness { tried } => {
                write!(f, "no ImpBar witness among [")?;
                for (i, n) in tried.iter().enumerate() {
                    write!(f, "{}{n}", if i > 0 { ", " } else { "" })?;
                }
                write!(f, "]")
            }
            TypeErrorKind::GoalShape { rule, goal } => write!(f, "{rule} cannot conclude `{goal}`"),
            TypeErrorKind::TraceMismatch(m) => write!(f, "trace mismatch: {m}"),
        }
    }
}

/// A diagnostic naming the subterm (by path) where checking failed.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at {}: {kind}", fmt_path(path))]
pub struct TypeError {
    pub path: Vec<usize>,
    pub kind: TypeErrorKind,
}

fn fail<T>(path: &[usize], kind: TypeErrorKind) -> Result<T, TypeError> {
    Err(TypeError { path: path.to_vec(), kind })
}

fn goal_text(p: Polarity, a: &Formula, n: Option<&NodeId>) -> String {
    match n {
        Some(n) => format!("{p} {a} @ {n}"),
        None => format!("{p} {a}"),
    }
}

fn precheck(s: &Sequent, t: &Term) -> Result<(), TypeError> {
    let mut seen = BTreeSet::new();
    for v in s.ctx.vars() {
        if !seen.insert(v) {
            return fail(&[], TypeErrorKind::DuplicateVariable(v.to_string()));
        }
    }
    if let Some(x) = t.free_vars().into_iter().find(|x| !seen.contains(x.as_str())) {
        return fail(&[], TypeErrorKind::UnboundVariable(x));
    }
    Ok(())
}

/// Checks `G ; Gamma |- t : p A @ n` and returns the derivation it found.
pub fn check(s: &Sequent, t: &Term) -> Result<TypingTrace, TypeError> {
    precheck(s, t)?;
    check_at(s, t, &mut Vec::new())
}

/// The judgment holds.
pub fn accepts(s: &Sequent, t: &Term) -> bool {
    check(s, t).is_ok()
}

fn with_goal(s: &Sequent, pol: Polarity, formula: &Formula, node: &NodeId) -> Sequent {
    Sequent { graph: s.graph.clone(), ctx: s.ctx.clone(), pol, formula: formula.clone(), node: node.clone() }
}

fn leaf(rule: TypingRule, s: &Sequent, witness: TypingWitness) -> TypingTrace {
    TypingTrace { rule, sequent: s.clone(), witness, premises: vec![] }
}

fn sub<T>(path: &mut Vec<usize>, i: usize, f: impl FnOnce(&mut Vec<usize>) -> T) -> T {
    path.push(i);
    let r = f(path);
    path.pop();
    r
}

/// Candidate nodes for the cut formula: the annotation first, then every node
/// of the sequent, then one fresh node.
pub fn cut_candidates(s: &Sequent, annot: &NodeId) -> Vec<NodeId> {
    let mut out = vec![annot.clone()];
    for n in s.node_list() {
        if !out.contains(&n) {
            out.push(n);
        }
    }
    let mut used = out.clone();
    used.push(s.node.clone());
    out.push(fresh_node(used.iter()));
    out
}

fn check_at(s: &Sequent, t: &Term, path: &mut Vec<usize>) -> Result<TypingTrace, TypeError> {
    let (p, a, n) = (s.pol, &s.formula, &s.node);
    let shape = |rule| TypeErrorKind::GoalShape { rule, goal: goal_text(p, a, Some(n)) };
    match t {
        Term::Var(x) => {
            let Some((i, h)) = s.ctx.lookup(x) else {
                return fail(path, TypeErrorKind::UnboundVariable(x.clone()));
            };
            if h.pol != p || &h.formula != a {
                return fail(
                    path,
                    TypeErrorKind::AxMismatch {
                        var: x.clone(),
                        entry: goal_text(h.pol, &h.formula, Some(&h.node)),
                        goal: goal_text(p, a, Some(n)),
                    },
                );
            }
            if !reaches(&s.graph, &h.node, p, n) {
                return fail(path, TypeErrorKind::Unreachable { from: h.node.clone(), pol: p, to: n.clone() });
            }
            Ok(leaf(TypingRule::Ax, s, TypingWitness::Index(i)))
        }
        Term::Triv => match a {
            Formula::Unit(q) if *q == p => Ok(leaf(TypingRule::Unit, s, TypingWitness::None)),
            _ => fail(path, shape(TypingRule::Unit)),
        },
        Term::Pair(t1, t2) => match a {
            Formula::And(q, a1, a2) if *q == p => {
                let d1 = sub(path, 0, |path| check_at(&with_goal(s, p, a1, n), t1, path))?;
                let d2 = sub(path, 1, |path| check_at(&with_goal(s, p, a2, n), t2, path))?;
                Ok(TypingTrace { rule: TypingRule::And, sequent: s.clone(), witness: TypingWitness::None, premises: vec![d1, d2] })
            }
            _ => fail(path, shape(TypingRule::And)),
        },
        Term::In(d, t1) => match a {
            Formula::And(q, a1, a2) if *q == p.flip() => {
                let ad = d.pick(a1, a2);
                let d1 = sub(path, 0, |path| check_at(&with_goal(s, p, ad, n), t1, path))?;
                Ok(TypingTrace { rule: TypingRule::AndBar, sequent: s.clone(), witness: TypingWitness::Side(*d), premises: vec![d1] })
            }
            _ => fail(path, shape(TypingRule::AndBar)),
        },
        Term::Lam(y, body) => match a {
            Formula::Imp(q, a1, a2) if *q == p => {
                let fresh = fresh_node(s.node_list().iter());
                let premise = Sequent {
                    graph: s.graph.with_edge(Edge { from: n.clone(), pol: p, to: fresh.clone() }),
                    ctx: s.ctx.with(Hyp::named(y.clone(), p, (**a1).clone(), fresh.clone())),
                    pol: p,
                    formula: (**a2).clone(),
                    node: fresh.clone(),
                };
                let d1 = sub(path, 0, |path| check_at(&premise, body, path))?;
                Ok(TypingTrace { rule: TypingRule::Imp, sequent: s.clone(), witness: TypingWitness::Fresh(fresh), premises: vec![d1] })
            }
            _ => fail(path, shape(TypingRule::Imp)),
        },
        Term::CoPair(t1, t2) => match a {
            Formula::Imp(q, a1, a2) if *q == p.flip() => {
                let tried: Vec<NodeId> =
                    s.node_list().into_iter().filter(|m| reaches(&s.graph, n, p.flip(), m)).collect();
                for m in &tried {
                    let r1 = sub(path, 0, |path| check_at(&with_goal(s, p.flip(), a1, m), t1, path));
                    let Ok(d1) = r1 else { continue };
                    let r2 = sub(path, 1, |path| check_at(&with_goal(s, p, a2, m), t2, path));
                    let Ok(d2) = r2 else { continue };
                    return Ok(TypingTrace {
                        rule: TypingRule::ImpBar,
                        sequent: s.clone(),
                        witness: TypingWitness::Node(m.clone()),
                        premises: vec![d1, d2],
                    });
                }
                fail(path, TypeErrorKind::NoImpBarWitness { tried })
            }
            _ => fail(path, shape(TypingRule::ImpBar)),
        },
        Term::Cut(x, left, ann, right) => {
            let ctx = s.ctx.with(Hyp::named(x.clone(), p.flip(), a.clone(), n.clone()));
            let base = Sequent { ctx, ..s.clone() };
            let mut first_err = None;
            for m in cut_candidates(s, &ann.node) {
                let r = sub(path, 0, |path| check_at(&with_goal(&base, Polarity::Pos, &ann.formula, &m), left, path))
                    .and_then(|d1| {
                        let d2 =
                            sub(path, 1, |path| check_at(&with_goal(&base, Polarity::Neg, &ann.formula, &m), right, path))?;
                        Ok((d1, d2))
                    });
                match r {
                    Ok((d1, d2)) => {
                        return Ok(TypingTrace {
                            rule: TypingRule::Cut,
                            sequent: s.clone(),
                            witness: TypingWitness::CutNode(m),
                            premises: vec![d1, d2],
                        })
                    }
                    Err(e) => {
                        first_err.get_or_insert(e);
                    }
                }
            }
            Err(first_err.expect("at least one candidate"))
        }
    }
}

/// Re-validates a trace against its term, rule by rule, without search.
pub fn verify_trace(trace: &TypingTrace, t: &Term) -> Result<(), TypeError> {
    verify_at(trace, t, &mut Vec::new())
}

fn verify_at(tr: &TypingTrace, t: &Term, path: &mut Vec<usize>) -> Result<(), TypeError> {
    let mismatch = |path: &[usize], m: &str| fail(path, TypeErrorKind::TraceMismatch(m.to_string()));
    let s = &tr.sequent;
    let (p, a, n) = (s.pol, &s.formula, &s.node);
    let expected: Vec<Sequent> = match (t, &tr.rule, &tr.witness, a) {
        (Term::Var(x), TypingRule::Ax, TypingWitness::Index(i), _) => {
            let Some((j, h)) = s.ctx.lookup(x) else { return mismatch(path, "unbound variable") };
            if j != *i || h.pol != p || &h.formula != a || !reaches(&s.graph, &h.node, p, n) {
                return mismatch(path, "Ax side conditions fail");
            }
            vec![]
        }
        (Term::Triv, TypingRule::Unit, TypingWitness::None, Formula::Unit(q)) if *q == p => vec![],
        (Term::Pair(..), TypingRule::And, TypingWitness::None, Formula::And(q, a1, a2)) if *q == p => {
            vec![with_goal(s, p, a1, n), with_goal(s, p, a2, n)]
        }
        (Term::In(d, _), TypingRule::AndBar, TypingWitness::Side(e), Formula::And(q, a1, a2)) if *q == p.flip() && d == e => {
            vec![with_goal(s, p, d.pick(a1, a2), n)]
        }
        (Term::Lam(y, _), TypingRule::Imp, TypingWitness::Fresh(m), Formula::Imp(q, a1, a2)) if *q == p => {
            if s.node_list().contains(m) {
                return mismatch(path, "Imp node is not fresh");
            }
            vec![Sequent {
                graph: s.graph.with_edge(Edge { from: n.clone(), pol: p, to: m.clone() }),
                ctx: s.ctx.with(Hyp::named(y.clone(), p, (**a1).clone(), m.clone())),
                pol: p,
                formula: (**a2).clone(),
                node: m.clone(),
            }]
        }
        (Term::CoPair(..), TypingRule::ImpBar, TypingWitness::Node(m), Formula::Imp(q, a1, a2)) if *q == p.flip() => {
            if !reaches(&s.graph, n, p.flip(), m) {
                return mismatch(path, "ImpBar witness is unreachable");
            }
            vec![with_goal(s, p.flip(), a1, m), with_goal(s, p, a2, m)]
        }
        (Term::Cut(x, _, ann, _), TypingRule::Cut, TypingWitness::CutNode(m), _) => {
            let base = Sequent { ctx: s.ctx.with(Hyp::named(x.clone(), p.flip(), a.clone(), n.clone())), ..s.clone() };
            vec![with_goal(&base, Polarity::Pos, &ann.formula, m), with_goal(&base, Polarity::Neg, &ann.formula, m)]
        }
        _ => return mismatch(path, "rule does not match the term and goal"),
    };
    let kids = t.children();
    if expected.len() != tr.premises.len() || kids.len() != expected.len() {
        return mismatch(path, "wrong number of premises");
    }
    for (i, ((prem, want), kid)) in tr.premises.iter().zip(&expected).zip(kids).enumerate() {
        if &prem.sequent != want {
            return sub(path, i, |path| mismatch(path, "premise sequent differs from the rule instance"));
        }
        sub(path, i, |path| verify_at(prem, kid, path))?;
    }
    Ok(())
}

/// A context with the world annotations dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassicalContext {
    pub entries: Vec<(String, Polarity, Formula)>,
}

impl ClassicalContext {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn lookup(&self, x: &str) -> Option<&(String, Polarity, Formula)> {
        self.entries.iter().rev().find(|e| e.0 == x)
    }

    fn with(&self, x: &str, p: Polarity, a: &Formula) -> ClassicalContext {
        let mut c = self.clone();
        c.entries.push((x.to_string(), p, a.clone()));
        c
    }
}

/// Pointwise removal of nodes. Unnamed entries get the name `_`.
pub fn erase_worlds(ctx: &crate::syntax::Context) -> ClassicalContext {
    ClassicalContext {
        entries: ctx
            .iter()
            .map(|h| (h.var.clone().unwrap_or_else(|| "_".to_string()), h.pol, h.formula.clone()))
            .collect(),
    }
}

/// Classical typing: the same dispatch as [`check`] with no graphs, nodes,
/// reachability or freshness.
pub fn classical_check(ctx: &ClassicalContext, t: &Term, p: Polarity, a: &Formula) -> Result<(), TypeError> {
    classical_at(ctx, t, p, a, &mut Vec::new())
}

fn classical_at(
    ctx: &ClassicalContext,
    t: &Term,
    p: Polarity,
    a: &Formula,
    path: &mut Vec<usize>,
) -> Result<(), TypeError> {
    let shape = |rule| TypeErrorKind::GoalShape { rule, goal: goal_text(p, a, None) };
    match (t, a) {
        (Term::Var(x), _) => match ctx.lookup(x) {
            None => fail(path, TypeErrorKind::UnboundVariable(x.clone())),
            Some((_, q, b)) if *q == p && b == a => Ok(()),
            Some((_, q, b)) => fail(
                path,
                TypeErrorKind::AxMismatch { var: x.clone(), entry: goal_text(*q, b, None), goal: goal_text(p, a, None) },
            ),
        },
        (Term::Triv, Formula::Unit(q)) if *q == p => Ok(()),
        (Term::Triv, _) => fail(path, shape(TypingRule::Unit)),
        (Term::Pair(t1, t2), Formula::And(q, a1, a2)) if *q == p => {
            sub(path, 0, |path| classical_at(ctx, t1, p, a1, path))?;
            sub(path, 1, |path| classical_at(ctx, t2, p, a2, path))
        }
        (Term::Pair(..), _) => fail(path, shape(TypingRule::And)),
        (Term::In(d, t1), Formula::And(q, a1, a2)) if *q == p.flip() => {
            sub(path, 0, |path| classical_at(ctx, t1, p, d.pick(a1, a2), path))
        }
        (Term::In(..), _) => fail(path, shape(TypingRule::AndBar)),
        (Term::Lam(y, body), Formula::Imp(q, a1, a2)) if *q == p => {
            sub(path, 0, |path| classical_at(&ctx.with(y, p, a1), body, p, a2, path))
        }
        (Term::Lam(..), _) => fail(path, shape(TypingRule::Imp)),
        (Term::CoPair(t1, t2), Formula::Imp(q, a1, a2)) if *q == p.flip() => {
            sub(path, 0, |path| classical_at(ctx, t1, p.flip(), a1, path))?;
            sub(path, 1, |path| classical_at(ctx, t2, p, a2, path))
        }
        (Term::CoPair(..), _) => fail(path, shape(TypingRule::ImpBar)),
        (Term::Cut(x, left, ann, right), _) => {
            let ext = ctx.with(x, p.flip(), a);
            sub(path, 0, |path| classical_at(&ext, left, Polarity::Pos, &ann.formula, path))?;
            sub(path, 1, |path| classical_at(&ext, right, Polarity::Neg, &ann.formula, path))
        }
    }
}

/// Expands `case t of x. t1, x. t2` at `p C @ n`, where `t : p (A /\[p'] B) @ n`
/// with `p'` the flip of `p`, into five nested cuts.
#[allow(clippy::too_many_arguments)]
pub fn elaborate_case(
    scrutinee: &Term,
    x: &str,
    t1: &Term,
    t2: &Term,
    p: Polarity,
    a: &Formula,
    b: &Formula,
    c: &Formula,
    n: &NodeId,
) -> Term {
    let mut used: BTreeSet<String> = scrutinee.all_vars();
    used.extend(t1.all_vars());
    used.extend(t2.all_vars());
    used.insert(x.to_string());
    let mut fresh = || {
        let z = fresh_name("z", used.iter().map(String::as_str));
        used.insert(z.clone());
        z
    };
    let (z0, z1, z2) = (fresh(), fresh(), fresh());
    let at = |f: &Formula| CutAnnot::new(f.clone(), n.clone());
    let disj = Formula::and(p.flip(), a.clone(), b.clone());
    // Positive goals put the producer on the left of each cut; negative goals
    // mirror every cut.
    let cut = |v: &str, l: Term, ann: CutAnnot, r: Term| match p {
        Polarity::Pos => Term::cut(v, l, ann, r),
        Polarity::Neg => Term::cut(v, r, ann, l),
    };
    let pair = Term::pair(Term::var(&z1), Term::var(&z2));
    let inner = cut(&z2, scrutinee.clone(), at(&disj), pair);
    let branch2 = cut(x, t2.clone(), at(c), Term::var(&z0));
    let mid = cut(&z1, inner, at(b), branch2);
    let branch1 = cut(x, t1.clone(), at(c), Term::var(&z0));
    cut(&z0, mid, at(a), branch1)
}
