//! Finite Kripke models: interpretation, validity and countermodel search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::lcalc::{LFormula, LSequent};
use crate::syntax::{Context, Formula, Graph, NodeId, Polarity, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("relation is not reflexive at world {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} -> {1} -> {2}")]
    NotTransitive(usize, usize, usize),
    #[error("valuation of `{atom}` is not monotone along {from} -> {to}")]
    NotMonotone { atom: String, from: usize, to: usize },
    #[error("world {0} out of range")]
    BadWorld(usize),
    #[error("node `{0}` has no world")]
    Uninterpreted(NodeId),
}

/// A finite Kripke model over worlds `0..worlds`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: usize,
    rel: Vec<Vec<bool>>,
    val: BTreeMap<String, Vec<bool>>,
}

impl KripkeModel {
    /// Builds a model, rejecting relations that are not preorders and
    /// valuations that are not monotone.
    pub fn new(
        worlds: usize,
        rel: impl IntoIterator<Item = (usize, usize)>,
        val: impl IntoIterator<Item = (usize, String)>,
        atoms: &[String],
    ) -> Result<KripkeModel, KripkeError> {
        let mut r = vec![vec![false; worlds]; worlds];
        for (a, b) in rel {
            if a >= worlds || b >= worlds {
                return Err(KripkeError::BadWorld(a.max(b)));
            }
            r[a][b] = true;
        }
        let mut v: BTreeMap<String, Vec<bool>> = atoms.iter().map(|a| (a.clone(), vec![false; worlds])).collect();
        for (w, a) in val {
            if w >= worlds {
                return Err(KripkeError::BadWorld(w));
            }
            v.entry(a).or_insert_with(|| vec![false; worlds])[w] = true;
        }
        let m = KripkeModel { worlds, rel: r, val: v };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), KripkeError> {
        self.check_frame()?;
        self.check_valuation()
    }

    fn check_frame(&self) -> Result<(), KripkeError> {
        let k = self.worlds;
        for w in 0..k {
            if !self.rel[w][w] {
                return Err(KripkeError::NotReflexive(w));
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if self.rel[a][b] && self.rel[b][c] && !self.rel[a][c] {
                        return Err(KripkeError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_valuation(&self) -> Result<(), KripkeError> {
        let k = self.worlds;
        for (atom, vs) in &self.val {
            for a in 0..k {
                for b in 0..k {
                    if self.rel[a][b] && vs[a] && !vs[b] {
                        return Err(KripkeError::NotMonotone { atom: atom.clone(), from: a, to: b });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_preorder(&self) -> bool {
        self.check_frame().is_ok()
    }

    pub fn is_monotone(&self) -> bool {
        self.check_valuation().is_ok()
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.rel[w][v]
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.val.keys().map(String::as_str)
    }

    pub fn holds_atom(&self, w: usize, a: &str) -> Result<bool, KripkeError> {
        self.val.get(a).map(|vs| vs[w]).ok_or_else(|| KripkeError::UnknownAtom(a.to_string()))
    }

    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.worlds {
            for b in 0..self.worlds {
                if self.rel[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn valuation_pairs(&self) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for w in 0..self.worlds {
            for (a, vs) in &self.val {
                if vs[w] {
                    out.push((w, a.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "worlds")?;
        for w in 0..self.worlds {
            write!(f, " {w}")?;
        }
        writeln!(f)?;
        for (a, b) in self.relation_pairs() {
            writeln!(f, "R {a} {b}")?;
        }
        for (w, a) in self.valuation_pairs() {
            writeln!(f, "V {w} {a}")?;
        }
        Ok(())
    }
}

/// Maps nodes to worlds.
pub type NodeInterpreter = BTreeMap<NodeId, usize>;

pub fn interp_formula(m: &KripkeModel, w: usize, a: &Formula) -> Result<bool, KripkeError> {
    Ok(match a {
        Formula::Unit(p) => *p == Polarity::Pos,
        Formula::Atom(x) => m.holds_atom(w, x)?,
        Formula::And(Polarity::Pos, a, b) => interp_formula(m, w, a)? && interp_formula(m, w, b)?,
        Formula::And(Polarity::Neg, a, b) => interp_formula(m, w, a)? || interp_formula(m, w, b)?,
        Formula::Imp(Polarity::Pos, a, b) => {
            for v in 0..m.worlds {
                if m.rel[w][v] && interp_formula(m, v, a)? && !interp_formula(m, v, b)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Imp(Polarity::Neg, a, b) => {
            for v in 0..m.worlds {
                if m.rel[v][w] && !interp_formula(m, v, a)? && interp_formula(m, v, b)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// `+ F = F`, `- F = not F`.
pub fn interp_signed(m: &KripkeModel, w: usize, p: Polarity, a: &Formula) -> Result<bool, KripkeError> {
    let v = interp_formula(m, w, a)?;
    Ok(match p {
        Polarity::Pos => v,
        Polarity::Neg => !v,
    })
}

fn world_of(n: &NodeInterpreter, node: &NodeId) -> Result<usize, KripkeError> {
    n.get(node).copied().ok_or_else(|| KripkeError::Uninterpreted(node.clone()))
}

pub fn interp_graph(m: &KripkeModel, n: &NodeInterpreter, g: &Graph) -> Result<bool, KripkeError> {
    for e in g.iter() {
        let (a, b) = (world_of(n, &e.from)?, world_of(n, &e.to)?);
        let ok = match e.pol {
            Polarity::Pos => m.rel[a][b],
            Polarity::Neg => m.rel[b][a],
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn interp_context(m: &KripkeModel, n: &NodeInterpreter, ctx: &Context) -> Result<bool, KripkeError> {
    for h in ctx.iter() {
        if !interp_signed(m, world_of(n, &h.node)?, h.pol, &h.formula)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(graph and context) implies signed goal`.
pub fn sequent_holds(m: &KripkeModel, n: &NodeInterpreter, s: &Sequent) -> Result<bool, KripkeError> {
    if !interp_graph(m, n, &s.graph)? || !interp_context(m, n, &s.ctx)? {
        return Ok(true);
    }
    interp_signed(m, world_of(n, &s.node)?, s.pol, &s.formula)
}

/// Every preorder on `1..=max_worlds` worlds crossed with every monotone
/// valuation of `atoms`, in a fixed order.
pub fn enumerate_models(max_worlds: usize, atoms: &[String]) -> Vec<KripkeModel> {
    let mut out = Vec::new();
    for k in 1..=max_worlds {
        for rel in preorders(k) {
            let ups = up_sets(&rel);
            let mut choice = vec![0usize; atoms.len()];
            loop {
                let val = atoms.iter().zip(&choice).map(|(a, &i)| (a.clone(), ups[i].clone())).collect();
                out.push(KripkeModel { worlds: k, rel: rel.clone(), val });
                if !advance(&mut choice, ups.len()) {
                    break;
                }
            }
        }
    }
    out
}

/// Odometer increment; false once every digit has wrapped.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn preorders(k: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let mut r = vec![vec![false; k]; k];
        for (w, row) in r.iter_mut().enumerate() {
            row[w] = true;
        }
        for (i, &(a, b)) in off.iter().enumerate() {
            if mask >> i & 1 == 1 {
                r[a][b] = true;
            }
        }
        let transitive = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| !(r[a][b] && r[b][c]) || r[a][c])));
        if transitive {
            out.push(r);
        }
    }
    out
}

fn up_sets(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let k = rel.len();
    (0u64..(1u64 << k))
        .map(|mask| (0..k).map(|w| mask >> w & 1 == 1).collect::<Vec<bool>>())
        .filter(|s| (0..k).all(|a| (0..k).all(|b| !(rel[a][b] && s[a]) || s[b])))
        .collect()
}

/// Every total map from `nodes` to the worlds of `m`.
pub fn enumerate_interpreters(nodes: &[NodeId], m: &KripkeModel) -> Vec<NodeInterpreter> {
    let mut out = Vec::new();
    let mut digits = vec![0usize; nodes.len()];
    loop {
        out.push(nodes.iter().cloned().zip(digits.iter().copied()).collect());
        if !advance(&mut digits, m.worlds) {
            break;
        }
    }
    out
}

/// A falsifying model and node interpreter with a human-readable trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: KripkeModel,
    pub interp: NodeInterpreter,
    pub trace: Vec<String>,
}

impl Countermodel {
    /// Re-evaluates the sequent; true when it indeed fails.
    pub fn refutes(&self, s: &Sequent) -> bool {
        matches!(sequent_holds(&self.model, &self.interp, s), Ok(false))
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.model)?;
        for (n, w) in &self.interp {
            writeln!(f, "N {n} {w}")?;
        }
        for line in &self.trace {
            writeln!(f, "eval {line}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Countermodel(Box<Countermodel>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

fn check_atoms(used: BTreeSet<String>, atoms: &[String]) -> Result<(), KripkeError> {
    match used.into_iter().find(|a| !atoms.contains(a)) {
        Some(a) => Err(KripkeError::UnknownAtom(a)),
        None => Ok(()),
    }
}

/// Checks the sequent in every model with at most `max_worlds` worlds under
/// every interpretation of the nodes occurring anywhere in it.
pub fn validate(s: &Sequent, max_worlds: usize, atoms: &[String]) -> Result<Validity, KripkeError> {
    check_atoms(s.atoms(), atoms)?;
    let nodes = s.node_list();
    for m in enumerate_models(max_worlds, atoms) {
        for n in enumerate_interpreters(&nodes, &m) {
            if !sequent_holds(&m, &n, s)? {
                let trace = explain(&m, &n, s)?;
                return Ok(Validity::Countermodel(Box::new(Countermodel { model: m, interp: n, trace })));
            }
        }
    }
    Ok(Validity::Valid)
}

/// `validate` with the model list split into `jobs` contiguous chunks checked
/// on separate threads. The earliest countermodel in enumeration order wins.
pub fn validate_parallel(s: &Sequent, max_worlds: usize, atoms: &[String], jobs: usize) -> Result<Validity, KripkeError> {
    if jobs <= 1 {
        return validate(s, max_worlds, atoms);
    }
    check_atoms(s.atoms(), atoms)?;
    let nodes = s.node_list();
    let models = enumerate_models(max_worlds, atoms);
    let chunk = models.len().div_ceil(jobs).max(1);
    let first = |ms: &[KripkeModel]| -> Result<Option<(KripkeModel, NodeInterpreter)>, KripkeError> {
        for m in ms {
            for n in enumerate_interpreters(&nodes, m) {
                if !sequent_holds(m, &n, s)? {
                    return Ok(Some((m.clone(), n)));
                }
            }
        }
        Ok(None)
    };
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = models.chunks(chunk).map(|ms| scope.spawn(move || first(ms))).collect();
        handles.into_iter().map(|h| h.join().expect("validation thread panicked")).collect()
    });
    for r in results {
        if let Some((m, n)) = r? {
            let trace = explain(&m, &n, s)?;
            return Ok(Validity::Countermodel(Box::new(Countermodel { model: m, interp: n, trace })));
        }
    }
    Ok(Validity::Valid)
}

fn explain(m: &KripkeModel, n: &NodeInterpreter, s: &Sequent) -> Result<Vec<String>, KripkeError> {
    let mut out = Vec::new();
    for e in s.graph.iter() {
        out.push(format!("edge {e} holds with {} -> {}", n[&e.from], n[&e.to]));
    }
    for h in s.ctx.iter() {
        let w = n[&h.node];
        out.push(format!("hyp {} {} at world {w} = {}", h.pol, h.formula, interp_formula(m, w, &h.formula)?));
    }
    let w = n[&s.node];
    out.push(format!(
        "goal {} {} at world {w} = {} (needed {})",
        s.pol,
        s.formula,
        interp_formula(m, w, &s.formula)?,
        s.pol == Polarity::Pos
    ));
    Ok(out)
}

pub fn interp_l_formula(m: &KripkeModel, w: usize, a: &LFormula) -> Result<bool, KripkeError> {
    Ok(match a {
        LFormula::Top => true,
        LFormula::Bot => false,
        LFormula::Atom(x) => m.holds_atom(w, x)?,
        LFormula::And(a, b) => interp_l_formula(m, w, a)? && interp_l_formula(m, w, b)?,
        LFormula::Or(a, b) => interp_l_formula(m, w, a)? || interp_l_formula(m, w, b)?,
        LFormula::Imp(a, b) => {
            for v in 0..m.worlds {
                if m.rel[w][v] && interp_l_formula(m, v, a)? && !interp_l_formula(m, v, b)? {
                    return Ok(false);
                }
            }
            true
        }
        LFormula::Sub(a, b) => {
            for v in 0..m.worlds {
                if m.rel[v][w] && interp_l_formula(m, v, a)? && !interp_l_formula(m, v, b)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// Holds unless every edge holds, every left formula is true and every right
/// formula is false.
pub fn l_sequent_holds(m: &KripkeModel, n: &NodeInterpreter, s: &LSequent) -> Result<bool, KripkeError> {
    for (a, b) in &s.graph {
        if !m.rel[world_of(n, a)?][world_of(n, b)?] {
            return Ok(true);
        }
    }
    for h in &s.left {
        if !interp_l_formula(m, world_of(n, &h.node)?, &h.formula)? {
            return Ok(true);
        }
    }
    for h in &s.right {
        if interp_l_formula(m, world_of(n, &h.node)?, &h.formula)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn validate_l(s: &LSequent, max_worlds: usize, atoms: &[String]) -> Result<Validity, KripkeError> {
    check_atoms(s.atoms(), atoms)?;
    let nodes = s.node_list();
    for m in enumerate_models(max_worlds, atoms) {
        for n in enumerate_interpreters(&nodes, &m) {
            if !l_sequent_holds(&m, &n, s)? {
                return Ok(Validity::Countermodel(Box::new(Countermodel { model: m, interp: n, trace: vec![] })));
            }
        }
    }
    Ok(Validity::Valid)
}
