//! Abstract syntax shared by the logic (DIL), the type theory (DTT) and the
//! Kripke evaluator: polarities, polarized formulas, abstract Kripke graphs,
//! contexts and sequents.

use std::collections::BTreeSet;
use std::fmt;

/// Sign of a judgment: `+` asserts, `-` refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub const ALL: [Polarity; 2] = [Polarity::Pos, Polarity::Neg];

    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Polarity::Pos => '+',
            Polarity::Neg => '-',
        }
    }
}

/// The opposite polarity.
pub fn flip(p: Polarity) -> Polarity {
    p.flip()
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Polarized formula. `And(+)` is conjunction, `And(-)` disjunction,
/// `Imp(+)` implication and `Imp(-)` co-implication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Unit(Polarity),
    Imp(Polarity, Box<Formula>, Box<Formula>),
    And(Polarity, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn unit(p: Polarity) -> Formula {
        Formula::Unit(p)
    }

    pub fn imp(p: Polarity, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Imp(p, Box::new(lhs), Box::new(rhs))
    }

    pub fn and(p: Polarity, lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(p, Box::new(lhs), Box::new(rhs))
    }

    /// `A ->[-] <+>`, the "non-A" negation built from co-implication.
    pub fn non(a: Formula) -> Formula {
        Formula::imp(Polarity::Neg, a, Formula::unit(Polarity::Pos))
    }

    /// Height of the formula tree; atoms and units have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit(_) => 0,
            Formula::Imp(_, a, b) | Formula::And(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Unit(_) => {}
            Formula::Imp(_, a, b) | Formula::And(_, a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn is_atom_free(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Unit(_) => true,
            Formula::Imp(_, a, b) | Formula::And(_, a, b) => a.is_atom_free() && b.is_atom_free(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Unit(p) => write!(f, "<{p}>")?,
            Formula::Imp(p, a, b) => {
                a.fmt_prec(f, matches!(**a, Formula::Imp(..)))?;
                write!(f, " ->[{p}] ")?;
                b.fmt_prec(f, false)?;
            }
            Formula::And(p, a, b) => {
                a.fmt_prec(f, matches!(**a, Formula::Imp(..) | Formula::And(..)))?;
                write!(f, " /\\[{p}] ")?;
                b.fmt_prec(f, matches!(**b, Formula::Imp(..)))?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

/// A node of an abstract Kripke graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> NodeId {
        NodeId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `[target/replaced]self`.
    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> NodeId {
        if self == replaced {
            target.clone()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::new(s)
    }
}

/// Returns `prefix%k` where `k` is one above every counter already used with
/// that prefix in `used`.
pub fn fresh_name<'a>(prefix: &str, used: impl IntoIterator<Item = &'a str>) -> String {
    let mut next = 0usize;
    let mut taken = BTreeSet::new();
    for name in used {
        taken.insert(name.to_string());
        if let Some(rest) = name.strip_prefix(prefix).and_then(|r| r.strip_prefix('%')) {
            if let Ok(k) = rest.parse::<usize>() {
                next = next.max(k + 1);
            }
        }
    }
    loop {
        let candidate = format!("{prefix}%{next}");
        if !taken.contains(&candidate) {
            return candidate;
        }
        next += 1;
    }
}

/// A fresh node name (`n%k`) outside `used`.
pub fn fresh_node<'a>(used: impl IntoIterator<Item = &'a NodeId>) -> NodeId {
    NodeId(fresh_name("n", used.into_iter().map(|n| n.as_str())))
}

/// Polarized edge `from <=[pol] to`. A positive edge points from `from` to
/// `to`; a negative edge points the other way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: NodeId,
    pub pol: Polarity,
    pub to: NodeId,
}

impl Edge {
    pub fn new(from: impl Into<NodeId>, pol: Polarity, to: impl Into<NodeId>) -> Edge {
        Edge { from: from.into(), pol, to: to.into() }
    }

    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> Edge {
        Edge {
            from: self.from.subst_node(target, replaced),
            pol: self.pol,
            to: self.to.subst_node(target, replaced),
        }
    }

    /// The same constraint written with swapped endpoints and flipped polarity.
    pub fn mirrored(&self) -> Edge {
        Edge { from: self.to.clone(), pol: self.pol.flip(), to: self.from.clone() }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <=[{}] {}", self.from, self.pol, self.to)
    }
}

/// Abstract Kripke graph: a multiset of edges kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    pub edges: Vec<Edge>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Graph {
        Graph { edges: edges.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn with_edge(&self, edge: Edge) -> Graph {
        let mut g = self.clone();
        g.edges.push(edge);
        g
    }

    /// Multiset append (`G, G'`).
    pub fn concat(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        g.edges.extend(other.edges.iter().cloned());
        g
    }

    /// Nodes in first-occurrence order.
    pub fn node_list(&self) -> Vec<NodeId> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.edges {
            for n in [&e.from, &e.to] {
                if seen.insert(n.clone()) {
                    out.push(n.clone());
                }
            }
        }
        out
    }

    pub fn nodes(&self) -> BTreeSet<NodeId> {
        self.node_list().into_iter().collect()
    }

    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> Graph {
        Graph { edges: self.edges.iter().map(|e| e.subst_node(target, replaced)).collect() }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, ".");
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// One hypothesis `x : p A @ n` (DTT) or `p A @ n` (DIL).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyp {
    pub var: Option<String>,
    pub pol: Polarity,
    pub formula: Formula,
    pub node: NodeId,
}

impl Hyp {
    pub fn new(pol: Polarity, formula: Formula, node: impl Into<NodeId>) -> Hyp {
        Hyp { var: None, pol, formula, node: node.into() }
    }

    pub fn named(var: impl Into<String>, pol: Polarity, formula: Formula, node: impl Into<NodeId>) -> Hyp {
        Hyp { var: Some(var.into()), pol, formula, node: node.into() }
    }

    /// Same polarity, formula and node, ignoring the variable name.
    pub fn same_judgment(&self, other: &Hyp) -> bool {
        self.pol == other.pol && self.formula == other.formula && self.node == other.node
    }

    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> Hyp {
        Hyp { node: self.node.subst_node(target, replaced), ..self.clone() }
    }
}

impl fmt::Display for Hyp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = &self.var {
            write!(f, "{x} : ")?;
        }
        write!(f, "{} {} @ {}", self.pol, self.formula, self.node)
    }
}

/// Ordered list of hypotheses. Exchange is never implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub entries: Vec<Hyp>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_hyps(entries: impl IntoIterator<Item = Hyp>) -> Context {
        Context { entries: entries.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyp> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Hyp> {
        self.entries.get(i)
    }

    pub fn with(&self, hyp: Hyp) -> Context {
        let mut c = self.clone();
        c.entries.push(hyp);
        c
    }

    pub fn concat(&self, other: &Context) -> Context {
        let mut c = self.clone();
        c.entries.extend(other.entries.iter().cloned());
        c
    }

    pub fn node_list(&self) -> Vec<NodeId> {
        let mut seen = BTreeSet::new();
        self.entries
            .iter()
            .filter(|h| seen.insert(h.node.clone()))
            .map(|h| h.node.clone())
            .collect()
    }

    pub fn nodes(&self) -> BTreeSet<NodeId> {
        self.entries.iter().map(|h| h.node.clone()).collect()
    }

    /// Rightmost entry binding `x`.
    pub fn lookup(&self, x: &str) -> Option<(usize, &Hyp)> {
        self.entries.iter().enumerate().rev().find(|(_, h)| h.var.as_deref() == Some(x))
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter_map(|h| h.var.as_deref())
    }

    /// Variable names are pairwise distinct.
    pub fn has_distinct_vars(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.vars().all(|v| seen.insert(v))
    }

    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> Context {
        Context { entries: self.entries.iter().map(|h| h.subst_node(target, replaced)).collect() }
    }

    /// Drops variable names, turning a DTT context into a DIL one.
    pub fn forget_vars(&self) -> Context {
        Context { entries: self.entries.iter().map(|h| Hyp { var: None, ..h.clone() }).collect() }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, ".");
        }
        for (i, h) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// `G ; Gamma |- p A @ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub graph: Graph,
    pub ctx: Context,
    pub pol: Polarity,
    pub formula: Formula,
    pub node: NodeId,
}

impl Sequent {
    pub fn new(graph: Graph, ctx: Context, pol: Polarity, formula: Formula, node: impl Into<NodeId>) -> Sequent {
        Sequent { graph, ctx, pol, formula, node: node.into() }
    }

    /// `. ; . |- p A @ n`.
    pub fn closed(pol: Polarity, formula: Formula, node: impl Into<NodeId>) -> Sequent {
        Sequent::new(Graph::new(), Context::new(), pol, formula, node)
    }

    /// Every node mentioned anywhere in the sequent, in first-occurrence
    /// order: graph, then context, then the goal node.
    pub fn node_list(&self) -> Vec<NodeId> {
        let mut out = self.graph.node_list();
        for n in self.ctx.node_list().into_iter().chain(std::iter::once(self.node.clone())) {
            if !out.contains(&n) {
                out.push(n);
            }
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.formula.collect_atoms(&mut out);
        for h in self.ctx.iter() {
            h.formula.collect_atoms(&mut out);
        }
        out
    }

    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> Sequent {
        Sequent {
            graph: self.graph.subst_node(target, replaced),
            ctx: self.ctx.subst_node(target, replaced),
            pol: self.pol,
            formula: self.formula.clone(),
            node: self.node.subst_node(target, replaced),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {} |- {} {} @ {}", self.graph, self.ctx, self.pol, self.formula, self.node)
    }
}

/// Subjects that mention nodes.
pub trait HasNodes {
    fn nodes_of(&self) -> BTreeSet<NodeId>;
}

impl HasNodes for Graph {
    fn nodes_of(&self) -> BTreeSet<NodeId> {
        self.nodes()
    }
}

impl HasNodes for Context {
    fn nodes_of(&self) -> BTreeSet<NodeId> {
        self.nodes()
    }
}

impl HasNodes for Sequent {
    fn nodes_of(&self) -> BTreeSet<NodeId> {
        self.node_list().into_iter().collect()
    }
}

/// Exact set of nodes occurring in a graph or context.
pub fn nodes_of<T: HasNodes + ?Sized>(subject: &T) -> BTreeSet<NodeId> {
    subject.nodes_of()
}
