//! Seeded generators: well-typed DTT terms built by running the typing rules
//! backwards, and exhaustive enumerators of formulas and graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lcalc::LFormula;
use crate::reach::reaches;
use crate::syntax::{fresh_node, Context, Edge, Formula, Graph, Hyp, NodeId, Polarity, Sequent};
use crate::term::{CutAnnot, Side, Term};
use crate::typing::accepts;

/// A goal together with a term that checks against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedTerm {
    pub goal: Sequent,
    pub term: Term,
}

pub struct TermGen {
    rng: ChaCha8Rng,
    atoms: Vec<String>,
    next_var: usize,
    /// Probability of opening a cut when the budget allows one.
    pub cut_bias: f64,
}

impl TermGen {
    pub fn new(seed: u64, atoms: &[&str]) -> TermGen {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            next_var: 0,
            cut_bias: 0.6,
        }
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        let leaf = depth == 0 || self.rng.gen_bool(0.3);
        if leaf {
            let k = self.rng.gen_range(0..self.atoms.len() + 2);
            return match k.checked_sub(2) {
                Some(i) => Formula::atom(self.atoms[i].clone()),
                None => Formula::Unit(Polarity::ALL[k]),
            };
        }
        let p = Polarity::ALL[self.rng.gen_range(0..2)];
        let a = self.formula(depth - 1);
        let b = self.formula(depth - 1);
        if self.rng.gen_bool(0.5) {
            Formula::imp(p, a, b)
        } else {
            Formula::and(p, a, b)
        }
    }

    fn var(&mut self) -> String {
        self.next_var += 1;
        format!("v{}", self.next_var - 1)
    }

    /// A random goal: up to two named hypotheses at `n`, and a goal formula.
    pub fn goal(&mut self) -> Sequent {
        let mut ctx = Context::new();
        for _ in 0..self.rng.gen_range(0..3) {
            let p = Polarity::ALL[self.rng.gen_range(0..2)];
            let a = self.formula(2);
            let x = self.var();
            ctx = ctx.with(Hyp::named(x, p, a, "n"));
        }
        let p = Polarity::ALL[self.rng.gen_range(0..2)];
        let a = self.formula(3);
        Sequent::new(Graph::new(), ctx, p, a, "n")
    }

    /// A term of the given sequent with nesting at most `depth`, if the
    /// randomized backward search finds one.
    pub fn term(&mut self, s: &Sequent, depth: usize) -> Option<Term> {
        let mut options: Vec<u8> = vec![0, 1, 2];
        options.shuffle(&mut self.rng);
        if depth >= 2 && self.rng.gen_bool(self.cut_bias) {
            options.insert(0, 3);
        } else {
            options.push(3);
        }
        for o in options {
            let r = match o {
                0 => self.var_term(s),
                1 => self.intro(s, depth),
                2 if matches!(s.formula, Formula::Unit(q) if q == s.pol) => Some(Term::Triv),
                3 if depth >= 2 => self.cut(s, depth),
                _ => None,
            };
            if r.is_some() {
                return r;
            }
        }
        None
    }

    fn var_term(&mut self, s: &Sequent) -> Option<Term> {
        let hits: Vec<&str> = s
            .ctx
            .iter()
            .filter(|h| h.pol == s.pol && h.formula == s.formula && reaches(&s.graph, &h.node, s.pol, &s.node))
            .filter_map(|h| h.var.as_deref())
            .filter(|x| s.ctx.lookup(x).is_some_and(|(_, h)| h.pol == s.pol && h.formula == s.formula))
            .collect();
        hits.choose(&mut self.rng).map(|x| Term::var(*x))
    }

    fn at(s: &Sequent, pol: Polarity, formula: &Formula, node: &NodeId) -> Sequent {
        Sequent { graph: s.graph.clone(), ctx: s.ctx.clone(), pol, formula: formula.clone(), node: node.clone() }
    }

    fn intro(&mut self, s: &Sequent, depth: usize) -> Option<Term> {
        if depth == 0 {
            return None;
        }
        let (p, n) = (s.pol, &s.node);
        match &s.formula {
            Formula::And(q, a, b) if *q == p => {
                let t1 = self.term(&Self::at(s, p, a, n), depth - 1)?;
                let t2 = self.term(&Self::at(s, p, b, n), depth - 1)?;
                Some(Term::pair(t1, t2))
            }
            Formula::And(_, a, b) => {
                let mut sides = Side::BOTH;
                sides.shuffle(&mut self.rng);
                sides.into_iter().find_map(|d| {
                    let t = self.term(&Self::at(s, p, d.pick(a, b), n), depth - 1)?;
                    Some(Term::inj(d, t))
                })
            }
            Formula::Imp(q, a, b) if *q == p => {
                let m = fresh_node(s.node_list().iter());
                let x = self.var();
                let premise = Sequent {
                    graph: s.graph.with_edge(Edge { from: n.clone(), pol: p, to: m.clone() }),
                    ctx: s.ctx.with(Hyp::named(x.clone(), p, (**a).clone(), m.clone())),
                    pol: p,
                    formula: (**b).clone(),
                    node: m,
                };
                let body = self.term(&premise, depth - 1)?;
                Some(Term::lam(x, body))
            }
            Formula::Imp(_, a, b) => {
                let mut nodes: Vec<NodeId> =
                    s.node_list().into_iter().filter(|m| reaches(&s.graph, n, p.flip(), m)).collect();
                nodes.dedup();
                nodes.shuffle(&mut self.rng);
                nodes.into_iter().find_map(|m| {
                    let t1 = self.term(&Self::at(s, p.flip(), a, &m), depth - 1)?;
                    let t2 = self.term(&Self::at(s, p, b, &m), depth - 1)?;
                    Some(Term::copair(t1, t2))
                })
            }
            _ => None,
        }
    }

    /// A cut at the current node whose formula is the goal itself, a
    /// hypothesis formula, or a fresh random formula.
    fn cut(&mut self, s: &Sequent, depth: usize) -> Option<Term> {
        let b = match self.rng.gen_range(0..4) {
            0 => s.formula.clone(),
            1 if !s.ctx.is_empty() => s.ctx.get(self.rng.gen_range(0..s.ctx.len()))?.formula.clone(),
            _ => self.formula(2),
        };
        let x = self.var();
        let base = Sequent { ctx: s.ctx.with(Hyp::named(x.clone(), s.pol.flip(), s.formula.clone(), s.node.clone())), ..s.clone() };
        let l = self.term(&Self::at(&base, Polarity::Pos, &b, &s.node), depth - 1)?;
        let r = self.term(&Self::at(&base, Polarity::Neg, &b, &s.node), depth - 1)?;
        Some(Term::cut(x, l, CutAnnot { formula: b, node: s.node.clone() }, r))
    }
}

/// `count` distinct goal/term pairs accepted by the type checker, with term
/// nesting at most `depth` and at least one cut each.
pub fn typed_terms(seed: u64, count: usize, depth: usize) -> Vec<TypedTerm> {
    let mut g = TermGen::new(seed, &["a", "b"]);
    let mut out: Vec<TypedTerm> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 400 {
        attempts += 1;
        let goal = g.goal();
        let Some(term) = g.term(&goal, depth) else { continue };
        if term.cut_count() == 0 || !accepts(&goal, &term) {
            continue;
        }
        let t = TypedTerm { goal, term };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Nesting depth of a term; leaves have depth 0.
pub fn term_depth(t: &Term) -> usize {
    t.children().into_iter().map(|c| 1 + term_depth(c)).max().unwrap_or(0)
}

/// DIL formula leaves over the given atoms: the atoms, then both units.
pub fn dil_leaves(atoms: &[&str]) -> Vec<Formula> {
    let mut out: Vec<Formula> = atoms.iter().map(|a| Formula::atom(*a)).collect();
    out.extend(Polarity::ALL.map(Formula::Unit));
    out
}

pub fn l_leaves(atoms: &[&str]) -> Vec<LFormula> {
    let mut out: Vec<LFormula> = atoms.iter().map(|a| LFormula::atom(*a)).collect();
    out.extend([LFormula::Top, LFormula::Bot]);
    out
}

/// Calls `f` on every tree with at most `max_ops` binary nodes over `leaves`,
/// grouped by node count. `ops` builds each binary node kind.
fn for_each_tree<T: Clone>(leaves: &[T], ops: &[fn(T, T) -> T], max_ops: usize, mut f: impl FnMut(&T)) {
    let mut by_size: Vec<Vec<T>> = vec![leaves.to_vec()];
    leaves.iter().for_each(&mut f);
    for k in 1..=max_ops {
        let keep = k < max_ops;
        let mut level = Vec::new();
        for op in ops {
            for i in 0..k {
                for a in &by_size[i] {
                    for b in &by_size[k - 1 - i] {
                        let t = op(a.clone(), b.clone());
                        f(&t);
                        if keep {
                            level.push(t);
                        }
                    }
                }
            }
        }
        by_size.push(level);
    }
}

/// Every DIL formula with at most `max_ops` connectives.
pub fn for_each_formula(atoms: &[&str], max_ops: usize, f: impl FnMut(&Formula)) {
    let ops: [fn(Formula, Formula) -> Formula; 4] = [
        |a, b| Formula::imp(Polarity::Pos, a, b),
        |a, b| Formula::imp(Polarity::Neg, a, b),
        |a, b| Formula::and(Polarity::Pos, a, b),
        |a, b| Formula::and(Polarity::Neg, a, b),
    ];
    for_each_tree(&dil_leaves(atoms), &ops, max_ops, f);
}

/// Every L formula with at most `max_ops` connectives.
pub fn for_each_l_formula(atoms: &[&str], max_ops: usize, f: impl FnMut(&LFormula)) {
    let ops: [fn(LFormula, LFormula) -> LFormula; 4] = [LFormula::imp, LFormula::sub, LFormula::and, LFormula::or];
    for_each_tree(&l_leaves(atoms), &ops, max_ops, f);
}

/// Every formula of depth at most `depth`; only small depths are tractable.
pub fn formulas_up_to_depth(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut all = dil_leaves(atoms);
    for _ in 0..depth {
        let mut next = dil_leaves(atoms);
        for a in &all {
            for b in &all {
                for p in Polarity::ALL {
                    next.push(Formula::imp(p, a.clone(), b.clone()));
                    next.push(Formula::and(p, a.clone(), b.clone()));
                }
            }
        }
        all = next;
    }
    all
}

/// All edges over the given nodes, loops included.
pub fn all_edges(nodes: &[NodeId]) -> Vec<Edge> {
    let mut out = Vec::new();
    for a in nodes {
        for p in Polarity::ALL {
            for b in nodes {
                out.push(Edge { from: a.clone(), pol: p, to: b.clone() });
            }
        }
    }
    out
}

/// Calls `f` on every edge multiset of size at most `max_edges`.
pub fn for_each_graph(nodes: &[NodeId], max_edges: usize, mut f: impl FnMut(&Graph)) {
    fn go(edges: &[Edge], start: usize, left: usize, cur: &mut Vec<Edge>, f: &mut dyn FnMut(&Graph)) {
        f(&Graph::from_edges(cur.iter().cloned()));
        if left == 0 {
            return;
        }
        for i in start..edges.len() {
            cur.push(edges[i].clone());
            go(edges, i, left - 1, cur, f);
            cur.pop();
        }
    }
    go(&all_edges(nodes), 0, max_edges, &mut Vec::new(), &mut f);
}

pub fn node_names(k: usize) -> Vec<NodeId> {
    (1..=k).map(|i| NodeId::new(format!("n{i}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_seeded() {
        let a = typed_terms(3, 10, 6);
        assert_eq!(a.len(), 10);
        assert_eq!(a, typed_terms(3, 10, 6));
        for t in &a {
            assert!(term_depth(&t.term) <= 6);
            assert!(accepts(&t.goal, &t.term));
        }
    }

    #[test]
    fn enumeration_counts() {
        let mut n = 0;
        for_each_formula(&["a", "b"], 2, |_| n += 1);
        assert_eq!(n, 4 + 4 * 16 + 4 * 2 * 4 * 64);
        let mut n = 0;
        for_each_l_formula(&["a"], 1, |_| n += 1);
        assert_eq!(n, 3 + 4 * 9);
        assert_eq!(formulas_up_to_depth(&["a"], 1).len(), 3 + 4 * 9);
        let mut n = 0;
        for_each_graph(&node_names(2), 2, |_| n += 1);
        assert_eq!(n, 1 + 8 + 36);
    }
}
