//! DTT terms: capture-avoiding substitution, free variables and
//! alpha-equivalence.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{fresh_name, Formula, NodeId};

/// Injection index `d` of `in_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::First, Side::Second];

    pub fn index(self) -> u8 {
        match self {
            Side::First => 1,
            Side::Second => 2,
        }
    }

    pub fn from_index(d: u8) -> Option<Side> {
        match d {
            1 => Some(Side::First),
            2 => Some(Side::Second),
            _ => None,
        }
    }

    /// Picks component `d` of a pair.
    pub fn pick<T>(self, first: T, second: T) -> T {
        match self {
            Side::First => first,
            Side::Second => second,
        }
    }
}

/// Cut formula and node written on a cut term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutAnnot {
    pub formula: Formula,
    pub node: NodeId,
}

impl CutAnnot {
    pub fn new(formula: Formula, node: impl Into<NodeId>) -> CutAnnot {
        CutAnnot { formula, node: node.into() }
    }
}

impl fmt::Display for CutAnnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} @ {}]", self.formula, self.node)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Triv,
    Pair(Box<Term>, Box<Term>),
    In(Side, Box<Term>),
    Lam(String, Box<Term>),
    CoPair(Box<Term>, Box<Term>),
    /// `nu x . left * right : [B @ n]`; `x` is bound in both components.
    Cut(String, Box<Term>, CutAnnot, Box<Term>),
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(d: Side, t: Term) -> Term {
        Term::In(d, Box::new(t))
    }

    pub fn lam(x: impl Into<String>, body: Term) -> Term {
        Term::Lam(x.into(), Box::new(body))
    }

    pub fn copair(a: Term, b: Term) -> Term {
        Term::CoPair(Box::new(a), Box::new(b))
    }

    pub fn cut(x: impl Into<String>, left: Term, annot: CutAnnot, right: Term) -> Term {
        Term::Cut(x.into(), Box::new(left), annot, Box::new(right))
    }

    /// Canonical terms are everything except cuts.
    pub fn is_canonical(&self) -> bool {
        !matches!(self, Term::Cut(..))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Triv => 1,
            Term::In(_, t) | Term::Lam(_, t) => 1 + t.size(),
            Term::Pair(a, b) | Term::CoPair(a, b) | Term::Cut(_, a, _, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn cut_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::Triv => 0,
            Term::In(_, t) | Term::Lam(_, t) => t.cut_count(),
            Term::Pair(a, b) | Term::CoPair(a, b) => a.cut_count() + b.cut_count(),
            Term::Cut(_, a, _, b) => 1 + a.cut_count() + b.cut_count(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Triv => false,
            Term::In(_, t) => t.occurs_free(x),
            Term::Lam(y, t) => y != x && t.occurs_free(x),
            Term::Pair(a, b) | Term::CoPair(a, b) => a.occurs_free(x) || b.occurs_free(x),
            Term::Cut(y, a, _, b) => y != x && (a.occurs_free(x) || b.occurs_free(x)),
        }
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            Term::Triv => {}
            Term::In(_, t) => t.collect_free(bound, out),
            Term::Lam(x, t) => {
                bound.push(x);
                t.collect_free(bound, out);
                bound.pop();
            }
            Term::Pair(a, b) | Term::CoPair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Cut(x, a, _, b) => {
                bound.push(x);
                a.collect_free(bound, out);
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Triv => {}
            Term::In(_, t) => t.collect_all_vars(out),
            Term::Lam(x, t) => {
                out.insert(x.clone());
                t.collect_all_vars(out);
            }
            Term::Pair(a, b) | Term::CoPair(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Term::Cut(x, a, _, b) => {
                out.insert(x.clone());
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
        }
    }

    /// Nodes written in cut annotations.
    pub fn annot_nodes(&self) -> BTreeSet<NodeId> {
        let mut out = BTreeSet::new();
        self.visit_cuts(&mut |a| {
            out.insert(a.node.clone());
        });
        out
    }

    fn visit_cuts(&self, f: &mut impl FnMut(&CutAnnot)) {
        match self {
            Term::Var(_) | Term::Triv => {}
            Term::In(_, t) | Term::Lam(_, t) => t.visit_cuts(f),
            Term::Pair(a, b) | Term::CoPair(a, b) => {
                a.visit_cuts(f);
                b.visit_cuts(f);
            }
            Term::Cut(_, a, ann, b) => {
                f(ann);
                a.visit_cuts(f);
                b.visit_cuts(f);
            }
        }
    }

    /// `[target/replaced]` applied to every cut annotation.
    pub fn subst_node(&self, target: &NodeId, replaced: &NodeId) -> Term {
        match self {
            Term::Var(_) | Term::Triv => self.clone(),
            Term::In(d, t) => Term::inj(*d, t.subst_node(target, replaced)),
            Term::Lam(x, t) => Term::lam(x.clone(), t.subst_node(target, replaced)),
            Term::Pair(a, b) => Term::pair(a.subst_node(target, replaced), b.subst_node(target, replaced)),
            Term::CoPair(a, b) => Term::copair(a.subst_node(target, replaced), b.subst_node(target, replaced)),
            Term::Cut(x, a, ann, b) => Term::cut(
                x.clone(),
                a.subst_node(target, replaced),
                CutAnnot { formula: ann.formula.clone(), node: ann.node.subst_node(target, replaced) },
                b.subst_node(target, replaced),
            ),
        }
    }

    /// `[s/x]self`, renaming binders that would capture free variables of `s`.
    pub fn subst(&self, x: &str, s: &Term) -> Term {
        let fv = s.free_vars();
        self.subst_with(x, s, &fv)
    }

    fn subst_with(&self, x: &str, s: &Term, fv: &BTreeSet<String>) -> Term {
        match self {
            Term::Var(y) => {
                if y == x {
                    s.clone()
                } else {
                    self.clone()
                }
            }
            Term::Triv => Term::Triv,
            Term::In(d, t) => Term::inj(*d, t.subst_with(x, s, fv)),
            Term::Pair(a, b) => Term::pair(a.subst_with(x, s, fv), b.subst_with(x, s, fv)),
            Term::CoPair(a, b) => Term::copair(a.subst_with(x, s, fv), b.subst_with(x, s, fv)),
            Term::Lam(y, body) => {
                if y == x || !body.occurs_free(x) {
                    return self.clone();
                }
                let (y, body) = avoid_capture(y, &[body], x, fv);
                Term::lam(y, body[0].subst_with(x, s, fv))
            }
            Term::Cut(y, a, ann, b) => {
                if y == x || !(a.occurs_free(x) || b.occurs_free(x)) {
                    return self.clone();
                }
                let (y, parts) = avoid_capture(y, &[a, b], x, fv);
                Term::cut(y, parts[0].subst_with(x, s, fv), ann.clone(), parts[1].subst_with(x, s, fv))
            }
        }
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Child subterms in path order.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Triv => vec![],
            Term::In(_, t) | Term::Lam(_, t) => vec![t],
            Term::Pair(a, b) | Term::CoPair(a, b) | Term::Cut(_, a, _, b) => vec![a, b],
        }
    }

    pub fn at_path(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i).and_then(|c| c.at_path(rest)),
        }
    }

    /// Replaces the subterm at `path`; `None` if the path leaves the term.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Option<Term> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        let t = match (self, i) {
            (Term::In(d, t), 0) => Term::inj(*d, t.replace_at(rest, new)?),
            (Term::Lam(x, t), 0) => Term::lam(x.clone(), t.replace_at(rest, new)?),
            (Term::Pair(a, b), 0) => Term::pair(a.replace_at(rest, new)?, (**b).clone()),
            (Term::Pair(a, b), 1) => Term::pair((**a).clone(), b.replace_at(rest, new)?),
            (Term::CoPair(a, b), 0) => Term::copair(a.replace_at(rest, new)?, (**b).clone()),
            (Term::CoPair(a, b), 1) => Term::copair((**a).clone(), b.replace_at(rest, new)?),
            (Term::Cut(x, a, ann, b), 0) => Term::cut(x.clone(), a.replace_at(rest, new)?, ann.clone(), (**b).clone()),
            (Term::Cut(x, a, ann, b), 1) => Term::cut(x.clone(), (**a).clone(), ann.clone(), b.replace_at(rest, new)?),
            _ => return None,
        };
        Some(t)
    }
}

/// Capture-avoiding substitution `[s/x]t`.
pub fn subst_term(t: &Term, x: &str, s: &Term) -> Term {
    t.subst(x, s)
}

pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    t1.alpha_eq(t2)
}

fn base_name(x: &str) -> &str {
    match x.find('%') {
        Some(i) if i > 0 => &x[..i],
        _ => x,
    }
}

fn avoid_capture(y: &str, parts: &[&Term], x: &str, fv: &BTreeSet<String>) -> (String, Vec<Term>) {
    if !fv.contains(y) {
        return (y.to_string(), parts.iter().map(|t| (*t).clone()).collect());
    }
    let mut used: BTreeSet<String> = fv.clone();
    used.insert(x.to_string());
    for t in parts {
        used.extend(t.all_vars());
    }
    let fresh = fresh_name(base_name(y), used.iter().map(String::as_str));
    let renamed = parts.iter().map(|t| t.subst(y, &Term::Var(fresh.clone()))).collect();
    (fresh, renamed)
}

fn lookup(env: &[&str], x: &str) -> Option<usize> {
    env.iter().rposition(|y| *y == x)
}

fn alpha<'a>(a: &'a Term, b: &'a Term, ea: &mut Vec<&'a str>, eb: &mut Vec<&'a str>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (lookup(ea, x), lookup(eb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Term::Triv, Term::Triv) => true,
        (Term::In(d1, t1), Term::In(d2, t2)) => d1 == d2 && alpha(t1, t2, ea, eb),
        (Term::Pair(a1, b1), Term::Pair(a2, b2)) | (Term::CoPair(a1, b1), Term::CoPair(a2, b2)) => {
            alpha(a1, a2, ea, eb) && alpha(b1, b2, ea, eb)
        }
        (Term::Lam(x, t1), Term::Lam(y, t2)) => {
            ea.push(x);
            eb.push(y);
            let r = alpha(t1, t2, ea, eb);
            ea.pop();
            eb.pop();
            r
        }
        (Term::Cut(x, l1, n1, r1), Term::Cut(y, l2, n2, r2)) => {
            if n1 != n2 {
                return false;
            }
            ea.push(x);
            eb.push(y);
            let r = alpha(l1, l2, ea, eb) && alpha(r1, r2, ea, eb);
            ea.pop();
            eb.pop();
            r
        }
        _ => false,
    }
}

fn needs_parens(t: &Term) -> bool {
    matches!(t, Term::Lam(..) | Term::Cut(..))
}

fn fmt_wrapped(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if needs_parens(t) {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Triv => write!(f, "triv"),
            Term::Pair(a, b) => write!(f, "({a}, {b})"),
            Term::CoPair(a, b) => write!(f, "<{a}, {b}>"),
            Term::In(d, t) => {
                write!(f, "in{} ", d.index())?;
                fmt_wrapped(t, f)
            }
            Term::Lam(x, t) => write!(f, "\\{x}. {t}"),
            Term::Cut(x, a, ann, b) => {
                write!(f, "nu {x} . ")?;
                fmt_wrapped(a, f)?;
                write!(f, " * ")?;
                fmt_wrapped(b, f)?;
                write!(f, " : {ann}")
            }
        }
    }
}
