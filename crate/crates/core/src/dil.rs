//! DIL derivations: checking, bounded proof search, and the weakening,
//! exchange and left-to-right transformers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::lcalc::fmt_path;
use crate::reach::reaches;
use crate::syntax::{fresh_node, Context, Edge, Formula, Graph, Hyp, NodeId, Polarity, Sequent};
use crate::term::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DilRule {
    Ax,
    Unit,
    And,
    AndBar,
    Imp,
    ImpBar,
    Cut,
    AxCut,
    AxCutBar,
}

impl DilRule {
    pub const ALL: [DilRule; 9] = [
        DilRule::Ax,
        DilRule::Unit,
        DilRule::And,
        DilRule::AndBar,
        DilRule::Imp,
        DilRule::ImpBar,
        DilRule::Cut,
        DilRule::AxCut,
        DilRule::AxCutBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DilRule::Ax => "ax",
            DilRule::Unit => "unit",
            DilRule::And => "and",
            DilRule::AndBar => "andBar",
            DilRule::Imp => "imp",
            DilRule::ImpBar => "impBar",
            DilRule::Cut => "cut",
            DilRule::AxCut => "axCut",
            DilRule::AxCutBar => "axCutBar",
        }
    }

    pub fn from_name(s: &str) -> Option<DilRule> {
        DilRule::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for DilRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DilWitness {
    None,
    /// Context position used by ax.
    Index(usize),
    Side(Side),
    Fresh(NodeId),
    /// Reachable node chosen by impBar.
    Node(NodeId),
    /// Cut formula and node of a general cut.
    Cut(Formula, NodeId),
    /// Position in the extended context of the entry closing an axiom cut.
    Entry(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilDerivation {
    pub rule: DilRule,
    pub conclusion: Sequent,
    pub witness: DilWitness,
    pub children: Vec<DilDerivation>,
}

impl DilDerivation {
    pub fn new(rule: DilRule, conclusion: Sequent, witness: DilWitness, children: Vec<DilDerivation>) -> DilDerivation {
        DilDerivation { rule, conclusion, witness, children }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(DilDerivation::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(DilDerivation::size).sum::<usize>()
    }

    /// Rule names in pre-order.
    pub fn skeleton(&self) -> Vec<DilRule> {
        let mut out = vec![self.rule];
        for c in &self.children {
            out.extend(c.skeleton());
        }
        out
    }

    pub fn uses_rule(&self, rule: DilRule) -> bool {
        self.rule == rule || self.children.iter().any(|c| c.uses_rule(rule))
    }

    /// `[target/replaced]` over every sequent and witness.
    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> DilDerivation {
        let witness = match &self.witness {
            DilWitness::Fresh(n) => DilWitness::Fresh(n.subst_node(target, replaced)),
            DilWitness::Node(n) => DilWitness::Node(n.subst_node(target, replaced)),
            DilWitness::Cut(b, n) => DilWitness::Cut(b.clone(), n.subst_node(target, replaced)),
            w => w.clone(),
        };
        DilDerivation {
            rule: self.rule,
            conclusion: self.conclusion.subst_node(target, replaced),
            witness,
            children: self.children.iter().map(|c| c.subst_node(target, replaced)).collect(),
        }
    }

    /// Every node mentioned anywhere in the tree.
    pub fn all_nodes(&self) -> BTreeSet<NodeId> {
        let mut out: BTreeSet<NodeId> = self.conclusion.node_list().into_iter().collect();
        match &self.witness {
            DilWitness::Fresh(n) | DilWitness::Node(n) | DilWitness::Cut(_, n) => {
                out.insert(n.clone());
            }
            _ => {}
        }
        for c in &self.children {
            out.extend(c.all_nodes());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    /// Every rule, including the unrestricted cut.
    General,
    /// Only axiom cuts.
    Axiom,
}

impl std::str::FromStr for CutMode {
    type Err = String;

    fn from_str(s: &str) -> Result<CutMode, String> {
        match s {
            "general" => Ok(CutMode::General),
            "axiom" => Ok(CutMode::Axiom),
            _ => Err(format!("unknown mode `{s}` (expected `general` or `axiom`)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at {}: {rule}: {message}", fmt_path(path))]
pub struct DilCheckError {
    pub path: Vec<usize>,
    pub rule: DilRule,
    pub message: String,
}

pub fn check_dil(d: &DilDerivation, mode: CutMode) -> Result<(), DilCheckError> {
    check_at(d, mode, &mut Vec::new())
}

fn check_at(d: &DilDerivation, mode: CutMode, path: &mut Vec<usize>) -> Result<(), DilCheckError> {
    if let Err(message) = check_node(d, mode) {
        return Err(DilCheckError { path: path.clone(), rule: d.rule, message });
    }
    for (i, c) in d.children.iter().enumerate() {
        path.push(i);
        check_at(c, mode, path)?;
        path.pop();
    }
    Ok(())
}

fn goal(s: &Sequent, pol: Polarity, formula: &Formula, node: &NodeId) -> Sequent {
    Sequent { graph: s.graph.clone(), ctx: s.ctx.clone(), pol, formula: formula.clone(), node: node.clone() }
}

/// The context `Gamma, p' A @ n` shared by both premises of a cut.
fn cut_context(s: &Sequent) -> Context {
    s.ctx.with(Hyp::new(s.pol.flip(), s.formula.clone(), s.node.clone()))
}

fn imp_premise(s: &Sequent, fresh: &NodeId, a1: &Formula, a2: &Formula) -> Sequent {
    Sequent {
        graph: s.graph.with_edge(Edge { from: s.node.clone(), pol: s.pol, to: fresh.clone() }),
        ctx: s.ctx.with(Hyp::new(s.pol, a1.clone(), fresh.clone())),
        pol: s.pol,
        formula: a2.clone(),
        node: fresh.clone(),
    }
}

/// The premises a rule instance demands, or a diagnostic.
fn premises(rule: DilRule, w: &DilWitness, s: &Sequent, mode: CutMode) -> Result<Vec<Sequent>, String> {
    let (p, a, n) = (s.pol, &s.formula, &s.node);
    let shape = || Err(format!("{rule} cannot conclude `{p} {a} @ {n}`"));
    match (rule, w) {
        (DilRule::Ax, DilWitness::Index(k)) => {
            let Some(h) = s.ctx.get(*k) else { return Err(format!("no context entry {k}")) };
            if h.pol != p || &h.formula != a {
                return Err(format!("entry {k} is `{} {} @ {}`, not the goal", h.pol, h.formula, h.node));
            }
            if !reaches(&s.graph, &h.node, p, n) {
                return Err(format!("{n} is not reachable from {} at {p}", h.node));
            }
            Ok(vec![])
        }
        (DilRule::Unit, DilWitness::None) => match a {
            Formula::Unit(q) if *q == p => Ok(vec![]),
            _ => shape(),
        },
        (DilRule::And, DilWitness::None) => match a {
            Formula::And(q, a1, a2) if *q == p => Ok(vec![goal(s, p, a1, n), goal(s, p, a2, n)]),
            _ => shape(),
        },
        (DilRule::AndBar, DilWitness::Side(d)) => match a {
            Formula::And(q, a1, a2) if *q == p.flip() => Ok(vec![goal(s, p, d.pick(a1, a2), n)]),
            _ => shape(),
        },
        (DilRule::Imp, DilWitness::Fresh(m)) => match a {
            Formula::Imp(q, a1, a2) if *q == p => {
                if s.graph.nodes().contains(m) || s.ctx.nodes().contains(m) {
                    return Err(format!("node `{m}` is not fresh"));
                }
                Ok(vec![imp_premise(s, m, a1, a2)])
            }
            _ => shape(),
        },
        (DilRule::ImpBar, DilWitness::Node(m)) => match a {
            Formula::Imp(q, a1, a2) if *q == p.flip() => {
                if !reaches(&s.graph, n, p.flip(), m) {
                    return Err(format!("{m} is not reachable from {n} at {}", p.flip()));
                }
                Ok(vec![goal(s, p.flip(), a1, m), goal(s, p, a2, m)])
            }
            _ => shape(),
        },
        (DilRule::Cut, DilWitness::Cut(b, m)) => {
            if mode == CutMode::Axiom {
                return Err("general cut is not allowed in axiom-cut mode".into());
            }
            let base = Sequent { ctx: cut_context(s), ..s.clone() };
            Ok(vec![goal(&base, Polarity::Pos, b, m), goal(&base, Polarity::Neg, b, m)])
        }
        (DilRule::AxCut | DilRule::AxCutBar, DilWitness::Entry(k)) => {
            let ctx = cut_context(s);
            let Some(h) = ctx.get(*k).cloned() else { return Err(format!("no entry {k} in the extended context")) };
            let want = if rule == DilRule::AxCut { p } else { p.flip() };
            if h.pol != want {
                return Err(format!("entry {k} has polarity {}, {rule} needs {want}", h.pol));
            }
            let base = Sequent { ctx, ..s.clone() };
            Ok(vec![goal(&base, h.pol.flip(), &h.formula, &h.node)])
        }
        _ => Err(format!("{rule} does not take witness {w:?}")),
    }
}

fn check_node(d: &DilDerivation, mode: CutMode) -> Result<(), String> {
    let want = premises(d.rule, &d.witness, &d.conclusion, mode)?;
    if want.len() != d.children.len() {
        return Err(format!("expected {} premises, found {}", want.len(), d.children.len()));
    }
    for (i, (w, c)) in want.iter().zip(&d.children).enumerate() {
        if &c.conclusion != w {
            return Err(format!("premise {i} should be `{w}` but is `{}`", c.conclusion));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no derivation within depth {depth}")]
pub struct NotFound {
    pub depth: usize,
}

type Key = (Vec<Edge>, Vec<(Polarity, Formula, NodeId)>, Polarity, Formula, NodeId);

fn key(s: &Sequent) -> Key {
    let edges: BTreeSet<Edge> = s.graph.iter().cloned().collect();
    let hyps: BTreeSet<(Polarity, Formula, NodeId)> =
        s.ctx.iter().map(|h| (h.pol, h.formula.clone(), h.node.clone())).collect();
    (edges.into_iter().collect(), hyps.into_iter().collect(), s.pol, s.formula.clone(), s.node.clone())
}

struct Prover {
    branch: Vec<Key>,
    /// Largest depth at which a sequent is known to fail regardless of branch.
    failed: HashMap<Key, usize>,
}

enum Outcome {
    Found(DilDerivation),
    /// `true` when the failure does not depend on the loop check.
    Failed(bool),
}

/// Iterative-deepening backward search in axiom-cut mode, up to `depth` rule
/// applications on any branch.
pub fn prove_dil(s: &Sequent, depth: usize) -> Result<DilDerivation, NotFound> {
    let mut pr = Prover { branch: Vec::new(), failed: HashMap::new() };
    for d in 1..=depth {
        if let Outcome::Found(der) = pr.search(s, d) {
            return Ok(der);
        }
    }
    Err(NotFound { depth })
}

impl Prover {
    fn search(&mut self, s: &Sequent, depth: usize) -> Outcome {
        if depth == 0 {
            return Outcome::Failed(true);
        }
        let k = key(s);
        if self.failed.get(&k).is_some_and(|&d| d >= depth) {
            return Outcome::Failed(true);
        }
        if self.branch.contains(&k) {
            return Outcome::Failed(false);
        }
        self.branch.push(k.clone());
        let out = self.expand(s, depth - 1);
        self.branch.pop();
        if let Outcome::Failed(true) = out {
            let e = self.failed.entry(k).or_insert(0);
            *e = (*e).max(depth);
        }
        out
    }

    /// Tries each candidate rule instance in order; the first whose premises
    /// are all found wins.
    fn expand(&mut self, s: &Sequent, depth: usize) -> Outcome {
        let mut clean = true;
        for (rule, witness) in candidates(s) {
            let Ok(prems) = premises(rule, &witness, s, CutMode::Axiom) else { continue };
            let mut kids = Vec::with_capacity(prems.len());
            for p in &prems {
                match self.search(p, depth) {
                    Outcome::Found(d) => kids.push(d),
                    Outcome::Failed(c) => {
                        clean &= c;
                        break;
                    }
                }
            }
            if kids.len() == prems.len() {
                return Outcome::Found(DilDerivation::new(rule, s.clone(), witness, kids));
            }
        }
        Outcome::Failed(clean)
    }
}

/// Rule instances in search order: closing rules, then the goal's own
/// introduction rules, then one axiom cut per distinct context entry.
fn candidates(s: &Sequent) -> Vec<(DilRule, DilWitness)> {
    let (p, n) = (s.pol, &s.node);
    let mut out = Vec::new();
    for (k, h) in s.ctx.iter().enumerate() {
        if h.pol == p && h.formula == s.formula && reaches(&s.graph, &h.node, p, n) {
            out.push((DilRule::Ax, DilWitness::Index(k)));
            break;
        }
    }
    match &s.formula {
        Formula::Unit(q) if *q == p => out.push((DilRule::Unit, DilWitness::None)),
        Formula::And(q, ..) if *q == p => out.push((DilRule::And, DilWitness::None)),
        Formula::And(..) => {
            out.push((DilRule::AndBar, DilWitness::Side(Side::First)));
            out.push((DilRule::AndBar, DilWitness::Side(Side::Second)));
        }
        Formula::Imp(q, ..) if *q == p => {
            let mut used = s.node_list();
            used.push(n.clone());
            out.push((DilRule::Imp, DilWitness::Fresh(fresh_node(used.iter()))));
        }
        Formula::Imp(..) => {
            for m in s.node_list() {
                if reaches(&s.graph, n, p.flip(), &m) {
                    out.push((DilRule::ImpBar, DilWitness::Node(m)));
                }
            }
        }
        _ => {}
    }
    let ext = cut_context(s);
    let mut seen = BTreeSet::new();
    for (k, h) in ext.iter().enumerate() {
        if !seen.insert((h.pol, h.formula.clone(), h.node.clone())) {
            continue;
        }
        let rule = if h.pol == p { DilRule::AxCut } else { DilRule::AxCutBar };
        out.push((rule, DilWitness::Entry(k)));
    }
    out
}

/// Derivation of the conclusion with `hyp` appended to its context.
pub fn weaken(d: &DilDerivation, hyp: Hyp) -> DilDerivation {
    let at = d.conclusion.ctx.len();
    let hyp = Hyp { var: None, ..hyp };
    weaken_at(d, &hyp, at)
}

fn shift(k: usize, at: usize) -> usize {
    if k >= at {
        k + 1
    } else {
        k
    }
}

fn weaken_at(d: &DilDerivation, hyp: &Hyp, at: usize) -> DilDerivation {
    let mut d = d.clone();
    // A fresh node that collides with the new hypothesis is renamed throughout
    // the subtree.
    if let DilWitness::Fresh(m) = &d.witness {
        if *m == hyp.node {
            let mut used = d.all_nodes();
            used.insert(hyp.node.clone());
            let renamed = fresh_node(used.iter());
            let m = m.clone();
            d.children = d.children.iter().map(|c| c.subst_node(&renamed, &m)).collect();
            d.witness = DilWitness::Fresh(renamed);
        }
    }
    d.conclusion.ctx.entries.insert(at, hyp.clone());
    d.witness = match d.witness {
        DilWitness::Index(k) => DilWitness::Index(shift(k, at)),
        DilWitness::Entry(k) => DilWitness::Entry(shift(k, at)),
        w => w,
    };
    d.children = d.children.iter().map(|c| weaken_at(c, hyp, at)).collect();
    d
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("permutation has length {got}, context has {want} entries")]
    LengthMismatch { got: usize, want: usize },
    #[error("not a permutation")]
    NotPermutation,
    #[error("context has no entry {0}")]
    BadIndex(usize),
    #[error("entry {index} has polarity {found}; the goal must be of the opposite polarity")]
    ShapeMismatch { index: usize, found: Polarity },
}

/// Derivation whose root context is `[ctx[perm[0]], ctx[perm[1]], ...]`.
pub fn exchange(d: &DilDerivation, perm: &[usize]) -> Result<DilDerivation, TransformError> {
    let len = d.conclusion.ctx.len();
    if perm.len() != len {
        return Err(TransformError::LengthMismatch { got: perm.len(), want: len });
    }
    let mut inverse = vec![usize::MAX; len];
    for (i, &j) in perm.iter().enumerate() {
        if j >= len || inverse[j] != usize::MAX {
            return Err(TransformError::NotPermutation);
        }
        inverse[j] = i;
    }
    Ok(exchange_at(d, perm, &inverse))
}

fn exchange_at(d: &DilDerivation, perm: &[usize], inverse: &[usize]) -> DilDerivation {
    let mut d = d.clone();
    let old = d.conclusion.ctx.entries.clone();
    for (i, &j) in perm.iter().enumerate() {
        d.conclusion.ctx.entries[i] = old[j].clone();
    }
    let remap = |k: usize| if k < inverse.len() { inverse[k] } else { k };
    d.witness = match d.witness {
        DilWitness::Index(k) => DilWitness::Index(remap(k)),
        DilWitness::Entry(k) => DilWitness::Entry(remap(k)),
        w => w,
    };
    d.children = d.children.iter().map(|c| exchange_at(c, perm, inverse)).collect();
    d
}

/// From `G ; Gamma1, p' A @ n, Gamma2 |- q B @ m` (with `p'` the flip of `p`)
/// builds `G ; Gamma1, Gamma2, q' B @ m |- p A @ n` by one axiom cut over a
/// weakened and exchanged copy of `d`.
pub fn left_to_right(d: &DilDerivation, hyp_index: usize) -> Result<DilDerivation, TransformError> {
    let s = &d.conclusion;
    let hyp = s.ctx.get(hyp_index).ok_or(TransformError::BadIndex(hyp_index))?.clone();
    let p = hyp.pol.flip();
    let moved = Hyp::new(s.pol.flip(), s.formula.clone(), s.node.clone());
    let weakened = weaken(d, moved.clone());
    let len = weakened.conclusion.ctx.len();
    let perm: Vec<usize> = (0..len).filter(|&i| i != hyp_index).chain(std::iter::once(hyp_index)).collect();
    let premise = exchange(&weakened, &perm)?;
    let mut rest = s.ctx.entries.clone();
    rest.remove(hyp_index);
    rest.push(moved.clone());
    let conclusion = Sequent {
        graph: s.graph.clone(),
        ctx: Context::from_hyps(rest),
        pol: p,
        formula: hyp.formula.clone(),
        node: hyp.node.clone(),
    };
    let entry = len - 2;
    let rule = if moved.pol == p { DilRule::AxCut } else { DilRule::AxCutBar };
    Ok(DilDerivation::new(rule, conclusion, DilWitness::Entry(entry), vec![premise]))
}

/// The two-layer derivation of `. ; . |- + A /\[-] (A ->[-] <+>) @ n`: an
/// outer axiom cut on the goal, then the left injection, an inner axiom cut,
/// the right injection, and the co-implication at the current node.
pub fn excluded_middle_derivation(a: &Formula, n: &NodeId) -> DilDerivation {
    use Polarity::{Neg, Pos};
    let em = Formula::and(Neg, a.clone(), Formula::non(a.clone()));
    let root = Sequent::new(Graph::new(), Context::new(), Pos, em.clone(), n.clone());
    let g1 = Context::from_hyps([Hyp::new(Neg, em.clone(), n.clone())]);
    let s1 = Sequent::new(Graph::new(), g1.clone(), Pos, em.clone(), n.clone());
    let s2 = Sequent::new(Graph::new(), g1.clone(), Pos, a.clone(), n.clone());
    let g2 = g1.with(Hyp::new(Neg, a.clone(), n.clone()));
    let s3 = Sequent::new(Graph::new(), g2.clone(), Pos, em, n.clone());
    let s4 = Sequent::new(Graph::new(), g2.clone(), Pos, Formula::non(a.clone()), n.clone());
    let s5 = Sequent::new(Graph::new(), g2.clone(), Neg, a.clone(), n.clone());
    let s6 = Sequent::new(Graph::new(), g2, Pos, Formula::Unit(Pos), n.clone());
    let leaf = |rule, s: Sequent, w| DilDerivation::new(rule, s, w, vec![]);
    let imp_bar = DilDerivation::new(
        DilRule::ImpBar,
        s4,
        DilWitness::Node(n.clone()),
        vec![leaf(DilRule::Ax, s5, DilWitness::Index(1)), leaf(DilRule::Unit, s6, DilWitness::None)],
    );
    let right = DilDerivation::new(DilRule::AndBar, s3, DilWitness::Side(Side::Second), vec![imp_bar]);
    let inner = DilDerivation::new(DilRule::AxCutBar, s2, DilWitness::Entry(0), vec![right]);
    let left = DilDerivation::new(DilRule::AndBar, s1, DilWitness::Side(Side::First), vec![inner]);
    DilDerivation::new(DilRule::AxCutBar, root, DilWitness::Entry(0), vec![left])
}
