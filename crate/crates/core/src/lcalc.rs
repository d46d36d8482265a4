//! The labelled calculus L: formulas, sequents, derivation checking, a
//! shallow prover, and the translations to and from DIL.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::{fresh_node, Context, Edge, Formula, Graph, Hyp, NodeId, Polarity, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LFormula {
    Top,
    Bot,
    Atom(String),
    Imp(Box<LFormula>, Box<LFormula>),
    /// `A -< B`: `A` held in some past world where `B` did not.
    Sub(Box<LFormula>, Box<LFormula>),
    And(Box<LFormula>, Box<LFormula>),
    Or(Box<LFormula>, Box<LFormula>),
}

impl LFormula {
    pub fn atom(a: impl Into<String>) -> LFormula {
        LFormula::Atom(a.into())
    }

    pub fn imp(a: LFormula, b: LFormula) -> LFormula {
        LFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn sub(a: LFormula, b: LFormula) -> LFormula {
        LFormula::Sub(Box::new(a), Box::new(b))
    }

    pub fn and(a: LFormula, b: LFormula) -> LFormula {
        LFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: LFormula, b: LFormula) -> LFormula {
        LFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            LFormula::Top | LFormula::Bot | LFormula::Atom(_) => 0,
            LFormula::Imp(a, b) | LFormula::Sub(a, b) | LFormula::And(a, b) | LFormula::Or(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            LFormula::Top | LFormula::Bot => {}
            LFormula::Atom(a) => {
                out.insert(a.clone());
            }
            LFormula::Imp(a, b) | LFormula::Sub(a, b) | LFormula::And(a, b) | LFormula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn is_compound(&self) -> bool {
        !matches!(self, LFormula::Top | LFormula::Bot | LFormula::Atom(_))
    }
}

impl fmt::Display for LFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &LFormula, op: &str, b: &LFormula| -> fmt::Result {
            for (i, x) in [a, b].into_iter().enumerate() {
                if i == 1 {
                    write!(f, " {op} ")?;
                }
                if x.is_compound() {
                    write!(f, "({x})")?;
                } else {
                    write!(f, "{x}")?;
                }
            }
            Ok(())
        };
        match self {
            LFormula::Top => write!(f, "true"),
            LFormula::Bot => write!(f, "false"),
            LFormula::Atom(a) => write!(f, "{a}"),
            LFormula::Imp(a, b) => bin(f, a, "=>", b),
            LFormula::Sub(a, b) => bin(f, a, "-<", b),
            LFormula::And(a, b) => bin(f, a, "&", b),
            LFormula::Or(a, b) => bin(f, a, "|", b),
        }
    }
}

/// `n : A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LHyp {
    pub node: NodeId,
    pub formula: LFormula,
}

impl LHyp {
    pub fn new(node: impl Into<NodeId>, formula: LFormula) -> LHyp {
        LHyp { node: node.into(), formula }
    }
}

impl fmt::Display for LHyp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.node, self.formula)
    }
}

pub type LGraph = Vec<(NodeId, NodeId)>;

/// `Gamma |-_G Delta`; both sides and the graph are multisets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LSequent {
    pub left: Vec<LHyp>,
    pub graph: LGraph,
    pub right: Vec<LHyp>,
}

impl LSequent {
    pub fn new(left: Vec<LHyp>, graph: LGraph, right: Vec<LHyp>) -> LSequent {
        LSequent { left, graph, right }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for h in self.left.iter().chain(&self.right) {
            h.formula.collect_atoms(&mut out);
        }
        out
    }

    /// Graph nodes, then left, then right, in first-occurrence order.
    pub fn node_list(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = Vec::new();
        let all = self
            .graph
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(self.left.iter().map(|h| &h.node))
            .chain(self.right.iter().map(|h| &h.node));
        for n in all {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
        out
    }

    /// Sorted copy; two sequents are the same multiset sequent iff their
    /// normal forms are equal.
    pub fn normalized(&self) -> LSequent {
        let mut s = self.clone();
        s.left.sort();
        s.graph.sort();
        s.right.sort();
        s
    }

    pub fn same_as(&self, other: &LSequent) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for LSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, hs: &[LHyp]| -> fmt::Result {
            for (i, h) in hs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{h}")?;
            }
            Ok(())
        };
        list(f, &self.left)?;
        if !self.left.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "|-[")?;
        for (i, (a, b)) in self.graph.iter().enumerate() {
            write!(f, "{}({a}, {b})", if i > 0 { ", " } else { " " })?;
        }
        write!(f, "{}]", if self.graph.is_empty() { "" } else { " " })?;
        if !self.right.is_empty() {
            write!(f, " ")?;
        }
        list(f, &self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LRule {
    Refl,
    Trans,
    Hyp,
    MonL,
    MonR,
    TrueL,
    TrueR,
    FalseL,
    FalseR,
    AndL,
    AndR,
    DisjL,
    DisjR,
    ImpL,
    ImpR,
    SubL,
    SubR,
}

impl LRule {
    pub const ALL: [LRule; 17] = [
        LRule::Refl,
        LRule::Trans,
        LRule::Hyp,
        LRule::MonL,
        LRule::MonR,
        LRule::TrueL,
        LRule::TrueR,
        LRule::FalseL,
        LRule::FalseR,
        LRule::AndL,
        LRule::AndR,
        LRule::DisjL,
        LRule::DisjR,
        LRule::ImpL,
        LRule::ImpR,
        LRule::SubL,
        LRule::SubR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LRule::Refl => "refl",
            LRule::Trans => "trans",
            LRule::Hyp => "hyp",
            LRule::MonL => "monL",
            LRule::MonR => "monR",
            LRule::TrueL => "trueL",
            LRule::TrueR => "trueR",
            LRule::FalseL => "falseL",
            LRule::FalseR => "falseR",
            LRule::AndL => "andL",
            LRule::AndR => "andR",
            LRule::DisjL => "disjL",
            LRule::DisjR => "disjR",
            LRule::ImpL => "impL",
            LRule::ImpR => "impR",
            LRule::SubL => "subL",
            LRule::SubR => "subR",
        }
    }

    pub fn from_name(s: &str) -> Option<LRule> {
        LRule::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for LRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Side data recorded on an L derivation node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LWitness {
    None,
    /// The node `n` whose loop `(n, n)` refl adds.
    Node(NodeId),
    /// `n1 G n2` and `n2 G n3` for trans.
    Edges(NodeId, NodeId, NodeId),
    /// The graph edge used by monL, monR, impL and subR.
    Edge(NodeId, NodeId),
    /// The fresh node of impR and subL.
    Fresh(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LDerivation {
    pub rule: LRule,
    pub conclusion: LSequent,
    pub witness: LWitness,
    pub children: Vec<LDerivation>,
}

impl LDerivation {
    pub fn new(rule: LRule, conclusion: LSequent, witness: LWitness, children: Vec<LDerivation>) -> LDerivation {
        LDerivation { rule, conclusion, witness, children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(LDerivation::size).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at {}: {rule}: {message}", fmt_path(path))]
pub struct LCheckError {
    pub path: Vec<usize>,
    pub rule: LRule,
    pub message: String,
}

pub(crate) fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "/".to_string()
    } else {
        path.iter().map(|i| format!("/{i}")).collect()
    }
}

fn ms_eq(a: &[LHyp], b: &[LHyp]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort();
    b.sort();
    a == b
}

fn graph_eq(a: &LGraph, b: &LGraph) -> bool {
    let (mut a, mut b) = (a.clone(), b.clone());
    a.sort();
    b.sort();
    a == b
}

fn without(v: &[LHyp], i: usize) -> Vec<LHyp> {
    let mut v = v.to_vec();
    v.remove(i);
    v
}

fn plus(v: &[LHyp], extra: impl IntoIterator<Item = LHyp>) -> Vec<LHyp> {
    let mut v = v.to_vec();
    v.extend(extra);
    v
}

fn has_edge(g: &LGraph, a: &NodeId, b: &NodeId) -> bool {
    g.iter().any(|(x, y)| x == a && y == b)
}

/// Checks every node of an L derivation.
pub fn check_l(d: &LDerivation) -> Result<(), LCheckError> {
    check_l_at(d, &mut Vec::new())
}

fn check_l_at(d: &LDerivation, path: &mut Vec<usize>) -> Result<(), LCheckError> {
    if let Err(message) = check_l_node(d) {
        return Err(LCheckError { path: path.clone(), rule: d.rule, message });
    }
    for (i, c) in d.children.iter().enumerate() {
        path.push(i);
        check_l_at(c, path)?;
        path.pop();
    }
    Ok(())
}

fn arity(d: &LDerivation, n: usize) -> Result<(), String> {
    if d.children.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} premises, found {}", d.children.len()))
    }
}

/// True when `p` equals `c` except for the given replacements.
fn premise_is(p: &LSequent, left: &[LHyp], graph: &LGraph, right: &[LHyp]) -> bool {
    ms_eq(&p.left, left) && graph_eq(&p.graph, graph) && ms_eq(&p.right, right)
}

fn check_l_node(d: &LDerivation) -> Result<(), String> {
    let c = &d.conclusion;
    let kids: Vec<&LSequent> = d.children.iter().map(|k| &k.conclusion).collect();
    let (l, g, r) = (&c.left, &c.graph, &c.right);
    let no_match = || Err("premises do not match any instance of the rule".to_string());
    match d.rule {
        LRule::Hyp => {
            arity(d, 0)?;
            if l.iter().any(|h| r.contains(h)) {
                Ok(())
            } else {
                Err("no formula occurs on both sides at the same node".into())
            }
        }
        LRule::TrueR => {
            arity(d, 0)?;
            if r.iter().any(|h| h.formula == LFormula::Top) {
                Ok(())
            } else {
                Err("no `true` on the right".into())
            }
        }
        LRule::FalseL => {
            arity(d, 0)?;
            if l.iter().any(|h| h.formula == LFormula::Bot) {
                Ok(())
            } else {
                Err("no `false` on the left".into())
            }
        }
        LRule::Refl => {
            arity(d, 1)?;
            let LWitness::Node(n) = &d.witness else {
                return Err("refl needs a node witness".into());
            };
            let mut g2 = g.clone();
            g2.push((n.clone(), n.clone()));
            if premise_is(kids[0], l, &g2, r) {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::Trans => {
            arity(d, 1)?;
            let LWitness::Edges(n1, n2, n3) = &d.witness else {
                return Err("trans needs an edge-pair witness".into());
            };
            if !has_edge(g, n1, n2) || !has_edge(g, n2, n3) {
                return Err(format!("edges ({n1}, {n2}) and ({n2}, {n3}) are not both in the graph"));
            }
            let mut g2 = g.clone();
            g2.push((n1.clone(), n3.clone()));
            if premise_is(kids[0], l, &g2, r) {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::MonL | LRule::MonR => {
            arity(d, 1)?;
            let LWitness::Edge(n1, n2) = &d.witness else {
                return Err("monotonicity needs an edge witness".into());
            };
            if !has_edge(g, n1, n2) {
                return Err(format!("edge ({n1}, {n2}) is not in the graph"));
            }
            let ok = if d.rule == LRule::MonL {
                l.iter()
                    .filter(|h| &h.node == n1)
                    .any(|h| premise_is(kids[0], &plus(l, [LHyp::new(n2.clone(), h.formula.clone())]), g, r))
            } else {
                r.iter()
                    .filter(|h| &h.node == n2)
                    .any(|h| premise_is(kids[0], l, g, &plus(r, [LHyp::new(n1.clone(), h.formula.clone())])))
            };
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::TrueL | LRule::FalseR => {
            arity(d, 1)?;
            let (side, unit) = if d.rule == LRule::TrueL { (l, LFormula::Top) } else { (r, LFormula::Bot) };
            let ok = side.iter().enumerate().filter(|(_, h)| h.formula == unit).any(|(i, _)| {
                let rest = without(side, i);
                if d.rule == LRule::TrueL {
                    premise_is(kids[0], &rest, g, r)
                } else {
                    premise_is(kids[0], l, g, &rest)
                }
            });
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::AndL | LRule::DisjR => {
            arity(d, 1)?;
            let left_rule = d.rule == LRule::AndL;
            let side = if left_rule { l } else { r };
            let ok = side.iter().enumerate().any(|(i, h)| {
                let parts = match (&h.formula, left_rule) {
                    (LFormula::And(a, b), true) | (LFormula::Or(a, b), false) => (a, b),
                    _ => return false,
                };
                let rest =
                    plus(&without(side, i), [LHyp::new(h.node.clone(), (**parts.0).clone()), LHyp::new(h.node.clone(), (**parts.1).clone())]);
                if left_rule {
                    premise_is(kids[0], &rest, g, r)
                } else {
                    premise_is(kids[0], l, g, &rest)
                }
            });
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::AndR | LRule::DisjL => {
            arity(d, 2)?;
            let right_rule = d.rule == LRule::AndR;
            let side = if right_rule { r } else { l };
            let ok = side.iter().enumerate().any(|(i, h)| {
                let (a, b) = match (&h.formula, right_rule) {
                    (LFormula::And(a, b), true) | (LFormula::Or(a, b), false) => (a, b),
                    _ => return false,
                };
                let one = plus(&without(side, i), [LHyp::new(h.node.clone(), (**a).clone())]);
                let two = plus(&without(side, i), [LHyp::new(h.node.clone(), (**b).clone())]);
                if right_rule {
                    premise_is(kids[0], l, g, &one) && premise_is(kids[1], l, g, &two)
                } else {
                    premise_is(kids[0], &one, g, r) && premise_is(kids[1], &two, g, r)
                }
            });
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::ImpL => {
            arity(d, 2)?;
            let LWitness::Edge(n1, n2) = &d.witness else {
                return Err("impL needs an edge witness".into());
            };
            if !has_edge(g, n1, n2) {
                return Err(format!("edge ({n1}, {n2}) is not in the graph"));
            }
            let ok = l.iter().enumerate().any(|(i, h)| {
                let LFormula::Imp(a, b) = &h.formula else { return false };
                if &h.node != n1 {
                    return false;
                }
                [without(l, i), l.clone()].iter().any(|base| {
                    premise_is(kids[0], base, g, &plus(r, [LHyp::new(n2.clone(), (**a).clone())]))
                        && premise_is(kids[1], &plus(base, [LHyp::new(n2.clone(), (**b).clone())]), g, r)
                })
            });
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::SubR => {
            arity(d, 2)?;
            let LWitness::Edge(n1, n2) = &d.witness else {
                return Err("subR needs an edge witness".into());
            };
            if !has_edge(g, n1, n2) {
                return Err(format!("edge ({n1}, {n2}) is not in the graph"));
            }
            let ok = r.iter().enumerate().any(|(i, h)| {
                let LFormula::Sub(a, b) = &h.formula else { return false };
                if &h.node != n2 {
                    return false;
                }
                [without(r, i), r.clone()].iter().any(|base| {
                    premise_is(kids[0], l, g, &plus(base, [LHyp::new(n1.clone(), (**a).clone())]))
                        && premise_is(kids[1], &plus(l, [LHyp::new(n1.clone(), (**b).clone())]), g, base)
                })
            });
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
        LRule::ImpR | LRule::SubL => {
            arity(d, 1)?;
            let LWitness::Fresh(fresh) = &d.witness else {
                return Err("needs a fresh-node witness".into());
            };
            if c.node_list().contains(fresh) {
                return Err(format!("node `{fresh}` is not fresh"));
            }
            let ok = if d.rule == LRule::ImpR {
                r.iter().enumerate().any(|(i, h)| {
                    let LFormula::Imp(a, b) = &h.formula else { return false };
                    let mut g2 = g.clone();
                    g2.push((h.node.clone(), fresh.clone()));
                    premise_is(
                        kids[0],
                        &plus(l, [LHyp::new(fresh.clone(), (**a).clone())]),
                        &g2,
                        &plus(&without(r, i), [LHyp::new(fresh.clone(), (**b).clone())]),
                    )
                })
            } else {
                l.iter().enumerate().any(|(i, h)| {
                    let LFormula::Sub(a, b) = &h.formula else { return false };
                    let mut g2 = g.clone();
                    g2.push((fresh.clone(), h.node.clone()));
                    premise_is(
                        kids[0],
                        &plus(&without(l, i), [LHyp::new(fresh.clone(), (**a).clone())]),
                        &g2,
                        &plus(r, [LHyp::new(fresh.clone(), (**b).clone())]),
                    )
                })
            };
            if ok {
                Ok(())
            } else {
                no_match()
            }
        }
    }
}

/// Reflexive-transitive path from `a` to `b` through graph edges.
fn edge_path(g: &LGraph, a: &NodeId, b: &NodeId) -> Option<Vec<NodeId>> {
    let mut prev: std::collections::BTreeMap<NodeId, NodeId> = Default::default();
    let mut queue = std::collections::VecDeque::from([a.clone()]);
    let mut seen = BTreeSet::from([a.clone()]);
    while let Some(n) = queue.pop_front() {
        if &n == b {
            let mut path = vec![n.clone()];
            let mut cur = n;
            while let Some(p) = prev.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Some(path);
        }
        for (x, y) in g {
            if x == &n && seen.insert(y.clone()) {
                prev.insert(y.clone(), n.clone());
                queue.push_back(y.clone());
            }
        }
    }
    None
}

/// Wraps `finish` (which proves `s` extended with the edge `(a, b)`) in the
/// refl/trans steps that add that edge to `s`.
fn with_edge(
    s: &LSequent,
    a: &NodeId,
    b: &NodeId,
    finish: impl FnOnce(&LSequent) -> Option<LDerivation>,
) -> Option<LDerivation> {
    if has_edge(&s.graph, a, b) {
        return finish(s);
    }
    if a == b {
        let mut s2 = s.clone();
        s2.graph.push((a.clone(), a.clone()));
        let child = finish(&s2)?;
        return Some(LDerivation::new(LRule::Refl, s.clone(), LWitness::Node(a.clone()), vec![child]));
    }
    let path = edge_path(&s.graph, a, b)?;
    let mut steps = Vec::new();
    let mut cur = s.clone();
    for i in 2..path.len() {
        let (n1, n2, n3) = (path[0].clone(), path[i - 1].clone(), path[i].clone());
        steps.push((cur.clone(), LWitness::Edges(n1.clone(), n2, n3.clone())));
        cur.graph.push((n1, n3));
    }
    let mut d = finish(&cur)?;
    for (seq, w) in steps.into_iter().rev() {
        d = LDerivation::new(LRule::Trans, seq, w, vec![d]);
    }
    Some(d)
}

fn reaches_l(g: &LGraph, a: &NodeId, b: &NodeId) -> bool {
    a == b || edge_path(g, a, b).is_some()
}

/// Depth-bounded backward search in L, used for the containment checks.
/// Depth counts logical rule applications; the refl/trans/mon steps that
/// justify an edge or move a hypothesis along it are free.
pub fn prove_l(s: &LSequent, depth: usize) -> Option<LDerivation> {
    let mut branch = Vec::new();
    (0..=depth).find_map(|d| search_l(s, d, &mut branch))
}

fn search_l(s: &LSequent, depth: usize, branch: &mut Vec<LSequent>) -> Option<LDerivation> {
    if let Some(d) = close_l(s) {
        return Some(d);
    }
    if depth == 0 {
        return None;
    }
    let key = s.normalized();
    if branch.contains(&key) {
        return None;
    }
    branch.push(key);
    let out = expand_l(s, depth - 1, branch);
    branch.pop();
    out
}

fn close_l(s: &LSequent) -> Option<LDerivation> {
    if s.right.iter().any(|h| h.formula == LFormula::Top) {
        return Some(LDerivation::new(LRule::TrueR, s.clone(), LWitness::None, vec![]));
    }
    if s.left.iter().any(|h| h.formula == LFormula::Bot) {
        return Some(LDerivation::new(LRule::FalseL, s.clone(), LWitness::None, vec![]));
    }
    for hl in &s.left {
        for hr in &s.right {
            if hl.formula != hr.formula || !reaches_l(&s.graph, &hl.node, &hr.node) {
                continue;
            }
            if hl.node == hr.node {
                return Some(LDerivation::new(LRule::Hyp, s.clone(), LWitness::None, vec![]));
            }
            let (a, b, f) = (hl.node.clone(), hr.node.clone(), hl.formula.clone());
            return with_edge(s, &a, &b, |s2| {
                let mut s3 = s2.clone();
                s3.left.push(LHyp::new(b.clone(), f));
                let hyp = LDerivation::new(LRule::Hyp, s3, LWitness::None, vec![]);
                Some(LDerivation::new(LRule::MonL, s2.clone(), LWitness::Edge(a.clone(), b.clone()), vec![hyp]))
            });
        }
    }
    None
}

fn expand_l(s: &LSequent, depth: usize, branch: &mut Vec<LSequent>) -> Option<LDerivation> {
    let mk = |rule, w, kids| Some(LDerivation::new(rule, s.clone(), w, kids));
    for (i, h) in s.left.iter().enumerate() {
        if let LFormula::And(a, b) = &h.formula {
            let mut p = s.clone();
            p.left = plus(&without(&s.left, i), [LHyp::new(h.node.clone(), (**a).clone()), LHyp::new(h.node.clone(), (**b).clone())]);
            return search_l(&p, depth, branch).and_then(|k| mk(LRule::AndL, LWitness::None, vec![k]));
        }
    }
    for (i, h) in s.right.iter().enumerate() {
        if let LFormula::Or(a, b) = &h.formula {
            let mut p = s.clone();
            p.right = plus(&without(&s.right, i), [LHyp::new(h.node.clone(), (**a).clone()), LHyp::new(h.node.clone(), (**b).clone())]);
            return search_l(&p, depth, branch).and_then(|k| mk(LRule::DisjR, LWitness::None, vec![k]));
        }
    }
    for (i, h) in s.right.iter().enumerate() {
        if let LFormula::And(a, b) = &h.formula {
            let mut p1 = s.clone();
            p1.right = plus(&without(&s.right, i), [LHyp::new(h.node.clone(), (**a).clone())]);
            let mut p2 = s.clone();
            p2.right = plus(&without(&s.right, i), [LHyp::new(h.node.clone(), (**b).clone())]);
            let k1 = search_l(&p1, depth, branch)?;
            let k2 = search_l(&p2, depth, branch)?;
            return mk(LRule::AndR, LWitness::None, vec![k1, k2]);
        }
    }
    for (i, h) in s.left.iter().enumerate() {
        if let LFormula::Or(a, b) = &h.formula {
            let mut p1 = s.clone();
            p1.left = plus(&without(&s.left, i), [LHyp::new(h.node.clone(), (**a).clone())]);
            let mut p2 = s.clone();
            p2.left = plus(&without(&s.left, i), [LHyp::new(h.node.clone(), (**b).clone())]);
            let k1 = search_l(&p1, depth, branch)?;
            let k2 = search_l(&p2, depth, branch)?;
            return mk(LRule::DisjL, LWitness::None, vec![k1, k2]);
        }
    }
    for (i, h) in s.left.iter().enumerate() {
        if let LFormula::Sub(a, b) = &h.formula {
            let fresh = fresh_node(s.node_list().iter());
            let mut p = s.clone();
            p.graph.push((fresh.clone(), h.node.clone()));
            p.left = plus(&without(&s.left, i), [LHyp::new(fresh.clone(), (**a).clone())]);
            p.right.push(LHyp::new(fresh.clone(), (**b).clone()));
            return search_l(&p, depth, branch).and_then(|k| mk(LRule::SubL, LWitness::Fresh(fresh), vec![k]));
        }
    }
    for (i, h) in s.right.iter().enumerate() {
        if let LFormula::Imp(a, b) = &h.formula {
            let fresh = fresh_node(s.node_list().iter());
            let mut p = s.clone();
            p.graph.push((h.node.clone(), fresh.clone()));
            p.left.push(LHyp::new(fresh.clone(), (**a).clone()));
            p.right = plus(&without(&s.right, i), [LHyp::new(fresh.clone(), (**b).clone())]);
            if let Some(k) = search_l(&p, depth, branch) {
                return mk(LRule::ImpR, LWitness::Fresh(fresh), vec![k]);
            }
        }
    }
    let nodes = s.node_list();
    for h in &s.left {
        let LFormula::Imp(a, b) = &h.formula else { continue };
        for n2 in nodes.iter().filter(|n| reaches_l(&s.graph, &h.node, n)) {
            let n1 = h.node.clone();
            let found = with_edge(s, &n1, n2, |s2| {
                let mut p1 = s2.clone();
                p1.right.push(LHyp::new(n2.clone(), (**a).clone()));
                let mut p2 = s2.clone();
                p2.left.push(LHyp::new(n2.clone(), (**b).clone()));
                let k1 = search_l(&p1, depth, branch)?;
                let k2 = search_l(&p2, depth, branch)?;
                Some(LDerivation::new(LRule::ImpL, s2.clone(), LWitness::Edge(n1.clone(), n2.clone()), vec![k1, k2]))
            });
            if found.is_some() {
                return found;
            }
        }
    }
    for h in &s.right {
        let LFormula::Sub(a, b) = &h.formula else { continue };
        for n1 in nodes.iter().filter(|n| reaches_l(&s.graph, n, &h.node)) {
            let n2 = h.node.clone();
            let found = with_edge(s, n1, &n2, |s2| {
                let mut p1 = s2.clone();
                p1.right.push(LHyp::new(n1.clone(), (**a).clone()));
                let mut p2 = s2.clone();
                p2.left.push(LHyp::new(n1.clone(), (**b).clone()));
                let k1 = search_l(&p1, depth, branch)?;
                let k2 = search_l(&p2, depth, branch)?;
                Some(LDerivation::new(LRule::SubR, s2.clone(), LWitness::Edge(n1.clone(), n2.clone()), vec![k1, k2]))
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// `D(A)`.
pub fn d_formula(a: &LFormula) -> Formula {
    use Polarity::{Neg, Pos};
    match a {
        LFormula::Top => Formula::Unit(Pos),
        LFormula::Bot => Formula::Unit(Neg),
        LFormula::Atom(x) => Formula::Atom(x.clone()),
        LFormula::And(a, b) => Formula::and(Pos, d_formula(a), d_formula(b)),
        LFormula::Or(a, b) => Formula::and(Neg, d_formula(a), d_formula(b)),
        LFormula::Imp(a, b) => Formula::imp(Pos, d_formula(a), d_formula(b)),
        LFormula::Sub(b, a) => Formula::imp(Neg, d_formula(a), d_formula(b)),
    }
}

/// `D(Gamma)^p`: every entry at polarity `p`.
pub fn d_context(hyps: &[LHyp], p: Polarity) -> Context {
    Context::from_hyps(hyps.iter().map(|h| Hyp::new(p, d_formula(&h.formula), h.node.clone())))
}

/// `D(G)`: every pair becomes a positive edge.
pub fn d_graph(g: &LGraph) -> Graph {
    Graph::from_edges(g.iter().map(|(a, b)| Edge { from: a.clone(), pol: Polarity::Pos, to: b.clone() }))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("the right-hand side of the L sequent is empty")]
    EmptyRight,
}

/// One DIL sequent per right-hand formula `n : A` of `Gamma |-_G Delta1, n : A, Delta2`:
/// `D(G) ; D(Gamma)^+, D(Delta1, Delta2)^- |- + D(A) @ n`.
pub fn activations(s: &LSequent) -> Result<Vec<Sequent>, TranslateError> {
    if s.right.is_empty() {
        return Err(TranslateError::EmptyRight);
    }
    let g = d_graph(&s.graph);
    let pos = d_context(&s.left, Polarity::Pos);
    Ok((0..s.right.len())
        .map(|i| {
            let active = &s.right[i];
            let rest = d_context(&without(&s.right, i), Polarity::Neg);
            Sequent::new(g.clone(), pos.concat(&rest), Polarity::Pos, d_formula(&active.formula), active.node.clone())
        })
        .collect())
}

/// Replaces an empty right-hand side by `n : false` with `n` fresh.
pub fn nonempty_right(s: &LSequent) -> LSequent {
    if !s.right.is_empty() {
        return s.clone();
    }
    let n = fresh_node(s.node_list().iter());
    LSequent { right: vec![LHyp::new(n, LFormula::Bot)], ..s.clone() }
}

/// `L(A)`.
pub fn l_formula(a: &Formula) -> LFormula {
    match a {
        Formula::Unit(Polarity::Pos) => LFormula::Top,
        Formula::Unit(Polarity::Neg) => LFormula::Bot,
        Formula::Atom(x) => LFormula::Atom(x.clone()),
        Formula::And(Polarity::Pos, a, b) => LFormula::and(l_formula(a), l_formula(b)),
        Formula::And(Polarity::Neg, a, b) => LFormula::or(l_formula(a), l_formula(b)),
        Formula::Imp(Polarity::Pos, a, b) => LFormula::imp(l_formula(a), l_formula(b)),
        Formula::Imp(Polarity::Neg, a, b) => LFormula::sub(l_formula(b), l_formula(a)),
    }
}

fn l_context_at(ctx: &Context, p: Polarity) -> Vec<LHyp> {
    ctx.iter().filter(|h| h.pol == p).map(|h| LHyp::new(h.node.clone(), l_formula(&h.formula))).collect()
}

/// `L(Gamma)^+`: the positive entries.
pub fn l_context_pos(ctx: &Context) -> Vec<LHyp> {
    l_context_at(ctx, Polarity::Pos)
}

/// `L(Gamma)^-`: the negative entries.
pub fn l_context_neg(ctx: &Context) -> Vec<LHyp> {
    l_context_at(ctx, Polarity::Neg)
}

/// `L(G)`: positive edges keep their direction, negative edges reverse.
pub fn l_graph(g: &Graph) -> LGraph {
    g.iter()
        .map(|e| match e.pol {
            Polarity::Pos => (e.from.clone(), e.to.clone()),
            Polarity::Neg => (e.to.clone(), e.from.clone()),
        })
        .collect()
}

/// A positive goal goes right, a negative goal goes left.
pub fn l_sequent(s: &Sequent) -> LSequent {
    let mut left = l_context_pos(&s.ctx);
    let mut right = Vec::new();
    let goal = LHyp::new(s.node.clone(), l_formula(&s.formula));
    match s.pol {
        Polarity::Pos => right.push(goal),
        Polarity::Neg => left.push(goal),
    }
    right.extend(l_context_neg(&s.ctx));
    LSequent { left, graph: l_graph(&s.graph), right }
}

/// Every edge of each graph occurs in the other, possibly mirrored.
pub fn graphs_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    let covered = |a: &Graph, b: &Graph| a.iter().all(|e| b.iter().any(|f| f == e || *f == e.mirrored()));
    covered(g1, g2) && covered(g2, g1)
}
