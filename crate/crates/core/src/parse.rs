//! Lexer and recursive-descent parsers for the surface grammar.

use std::fmt;

use thiserror::Error;

use crate::lcalc::{LFormula, LHyp, LSequent};
use crate::syntax::{Context, Edge, Formula, Graph, Hyp, NodeId, Polarity, Sequent};
use crate::term::{CutAnnot, Side, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

// Longest symbols first.
const SYMBOLS: &[&str] = &[
    "<+>", "<->", "->", "-<", "/\\", "<=", "|-", "=>", "(", ")", "[", "]", "<", ">", ",", ";", ":", ".", "@", "\\",
    "*", "+", "-", "&", "|",
];

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '%'
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Ident(s), line, col });
            col += i - start;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        // `-<+>` is a polarity followed by a unit, not co-implication.
        let unit_follows = rest.starts_with("-<") && matches!(chars.get(i + 2..i + 4), Some(['+' | '-', '>']));
        let sym = SYMBOLS
            .iter()
            .find(|s| rest.starts_with(**s) && !(unit_follows && **s == "-<"))
            .copied();
        match sym {
            Some(s) => {
                out.push(Spanned { tok: Tok::Sym(s), line, col });
                i += s.chars().count();
                col += s.chars().count();
            }
            None => {
                return Err(ParseError {
                    line,
                    col,
                    expected: vec!["a token".into()],
                    found: format!("`{c}`"),
                })
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: &[&str] = &["triv", "in1", "in2", "nu", "true", "false"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &[&str]) -> PResult<T> {
        let s = &self.toks[self.pos];
        Err(ParseError {
            line: s.line,
            col: s.col,
            expected: expected.iter().map(|e| e.to_string()).collect(),
            found: s.tok.to_string(),
        })
    }

    fn at(&self, sym: &str) -> bool {
        matches!(self.peek(), Tok::Sym(s) if *s == sym)
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat(&mut self, sym: &str) -> bool {
        if self.at(sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &'static str) -> PResult<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(&[&format!("`{sym}`")])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.err(&[what]),
        }
    }

    fn end(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err(&["end of input"])
        }
    }

    fn polarity(&mut self) -> PResult<Polarity> {
        if self.eat("+") {
            Ok(Polarity::Pos)
        } else if self.eat("-") {
            Ok(Polarity::Neg)
        } else {
            self.err(&["`+`", "`-`"])
        }
    }

    fn bracketed_polarity(&mut self) -> PResult<Polarity> {
        self.expect("[")?;
        let p = self.polarity()?;
        self.expect("]")?;
        Ok(p)
    }

    fn node(&mut self) -> PResult<NodeId> {
        self.ident("a node name").map(NodeId::new)
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.conj()?;
        if self.eat("->") {
            let p = self.bracketed_polarity()?;
            let rhs = self.formula()?;
            return Ok(Formula::imp(p, lhs, rhs));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let lhs = self.formula_atom()?;
        if self.eat("/\\") {
            let p = self.bracketed_polarity()?;
            let rhs = self.conj()?;
            return Ok(Formula::and(p, lhs, rhs));
        }
        Ok(lhs)
    }

    fn formula_atom(&mut self) -> PResult<Formula> {
        if self.eat("<+>") {
            return Ok(Formula::Unit(Polarity::Pos));
        }
        if self.eat("<->") {
            return Ok(Formula::Unit(Polarity::Neg));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        match self.ident("a formula") {
            Ok(a) => Ok(Formula::Atom(a)),
            Err(_) => self.err(&["an atom", "`<+>`", "`<->`", "`(`"]),
        }
    }

    fn edge(&mut self) -> PResult<Edge> {
        let from = self.node()?;
        self.expect("<=")?;
        let pol = self.bracketed_polarity()?;
        let to = self.node()?;
        Ok(Edge { from, pol, to })
    }

    /// Graph up to (not including) `stop`.
    fn graph(&mut self, stop: &str) -> PResult<Graph> {
        if self.at(stop) || *self.peek() == Tok::Eof {
            return Ok(Graph::new());
        }
        if self.at(".") {
            self.bump();
            return Ok(Graph::new());
        }
        let mut edges = vec![self.edge()?];
        while self.eat(",") {
            edges.push(self.edge()?);
        }
        Ok(Graph { edges })
    }

    fn hyp(&mut self) -> PResult<Hyp> {
        let var = if matches!(self.peek(), Tok::Ident(_)) && matches!(self.peek_at(1), Tok::Sym(":")) {
            let v = self.ident("a variable")?;
            self.bump();
            Some(v)
        } else {
            None
        };
        let pol = self.polarity()?;
        let formula = self.formula()?;
        self.expect("@")?;
        let node = self.node()?;
        Ok(Hyp { var, pol, formula, node })
    }

    fn context(&mut self, stop: &str) -> PResult<Context> {
        if self.at(stop) {
            return Ok(Context::new());
        }
        if self.at(".") {
            self.bump();
            return Ok(Context::new());
        }
        let mut entries = vec![self.hyp()?];
        while self.eat(",") {
            entries.push(self.hyp()?);
        }
        Ok(Context { entries })
    }

    fn sequent(&mut self) -> PResult<Sequent> {
        let graph = self.graph(";")?;
        self.expect(";")?;
        let ctx = self.context("|-")?;
        self.expect("|-")?;
        let pol = self.polarity()?;
        let formula = self.formula()?;
        self.expect("@")?;
        let node = self.node()?;
        Ok(Sequent { graph, ctx, pol, formula, node })
    }

    fn term(&mut self) -> PResult<Term> {
        if self.eat("\\") {
            let x = self.ident("a variable")?;
            self.expect(".")?;
            let body = self.term()?;
            return Ok(Term::lam(x, body));
        }
        if self.at_keyword("nu") {
            self.bump();
            let x = self.ident("a variable")?;
            self.expect(".")?;
            let left = self.term()?;
            self.expect("*")?;
            let right = self.term()?;
            self.expect(":")?;
            self.expect("[")?;
            let formula = self.formula()?;
            self.expect("@")?;
            let node = self.node()?;
            self.expect("]")?;
            return Ok(Term::cut(x, left, CutAnnot { formula, node }, right));
        }
        for (kw, side) in [("in1", Side::First), ("in2", Side::Second)] {
            if self.at_keyword(kw) {
                self.bump();
                return Ok(Term::inj(side, self.term()?));
            }
        }
        if self.at_keyword("triv") {
            self.bump();
            return Ok(Term::Triv);
        }
        if self.eat("(") {
            let a = self.term()?;
            if self.eat(",") {
                let b = self.term()?;
                self.expect(")")?;
                return Ok(Term::pair(a, b));
            }
            self.expect(")")?;
            return Ok(a);
        }
        if self.eat("<") {
            let a = self.term()?;
            self.expect(",")?;
            let b = self.term()?;
            self.expect(">")?;
            return Ok(Term::copair(a, b));
        }
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(Term::Var(s))
            }
            _ => self.err(&["a term"]),
        }
    }

    fn l_formula(&mut self) -> PResult<LFormula> {
        let lhs = self.l_disj()?;
        if self.eat("=>") {
            return Ok(LFormula::imp(lhs, self.l_formula()?));
        }
        if self.eat("-<") {
            return Ok(LFormula::sub(lhs, self.l_formula()?));
        }
        Ok(lhs)
    }

    fn l_disj(&mut self) -> PResult<LFormula> {
        let lhs = self.l_conj()?;
        if self.eat("|") {
            return Ok(LFormula::or(lhs, self.l_disj()?));
        }
        Ok(lhs)
    }

    fn l_conj(&mut self) -> PResult<LFormula> {
        let lhs = self.l_atom()?;
        if self.eat("&") {
            return Ok(LFormula::and(lhs, self.l_conj()?));
        }
        Ok(lhs)
    }

    fn l_atom(&mut self) -> PResult<LFormula> {
        if self.at_keyword("true") {
            self.bump();
            return Ok(LFormula::Top);
        }
        if self.at_keyword("false") {
            self.bump();
            return Ok(LFormula::Bot);
        }
        if self.eat("(") {
            let f = self.l_formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        match self.ident("an L formula") {
            Ok(a) => Ok(LFormula::Atom(a)),
            Err(_) => self.err(&["an atom", "`true`", "`false`", "`(`"]),
        }
    }

    fn l_hyp(&mut self) -> PResult<LHyp> {
        let node = self.node()?;
        self.expect(":")?;
        let formula = self.l_formula()?;
        Ok(LHyp { node, formula })
    }

    fn l_hyps(&mut self, stop: &str) -> PResult<Vec<LHyp>> {
        if self.at(stop) || *self.peek() == Tok::Eof {
            return Ok(vec![]);
        }
        if self.eat(".") {
            return Ok(vec![]);
        }
        let mut out = vec![self.l_hyp()?];
        while self.eat(",") {
            out.push(self.l_hyp()?);
        }
        Ok(out)
    }

    fn l_sequent(&mut self) -> PResult<LSequent> {
        let left = self.l_hyps("|-")?;
        self.expect("|-")?;
        self.expect("[")?;
        let mut graph = Vec::new();
        if !self.at("]") {
            loop {
                self.expect("(")?;
                let a = self.node()?;
                self.expect(",")?;
                let b = self.node()?;
                self.expect(")")?;
                graph.push((a, b));
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect("]")?;
        let right = self.l_hyps("")?;
        Ok(LSequent { left, graph, right })
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(text)?;
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    whole(text, |p| p.formula())
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    whole(text, |p| p.term())
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    whole(text, |p| p.sequent())
}

pub fn parse_polarity(text: &str) -> Result<Polarity, ParseError> {
    whole(text, |p| p.polarity())
}

pub fn parse_node(text: &str) -> Result<NodeId, ParseError> {
    whole(text, |p| p.node())
}

/// A comma-separated edge list; empty text or `.` is the empty graph.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    whole(text, |p| p.graph(""))
}

pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    whole(text, |p| {
        if *p.peek() == Tok::Eof {
            Ok(Context::new())
        } else {
            p.context("")
        }
    })
}

/// A goal file: a sequent followed by `|- term`.
pub fn parse_goal(text: &str) -> Result<(Sequent, Term), ParseError> {
    whole(text, |p| {
        let s = p.sequent()?;
        p.expect("|-")?;
        let t = p.term()?;
        Ok((s, t))
    })
}

pub fn parse_l_formula(text: &str) -> Result<LFormula, ParseError> {
    whole(text, |p| p.l_formula())
}

pub fn parse_l_sequent(text: &str) -> Result<LSequent, ParseError> {
    whole(text, |p| p.l_sequent())
}

/// Parses either a DIL sequent or an L sequent, told apart by `|-[`.
pub fn parse_any_sequent(text: &str) -> Result<AnySequent, ParseError> {
    let toks = lex(text)?;
    let is_l = toks.windows(2).any(|w| w[0].tok == Tok::Sym("|-") && w[1].tok == Tok::Sym("["));
    if is_l {
        parse_l_sequent(text).map(AnySequent::L)
    } else {
        parse_sequent(text).map(AnySequent::Dil)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySequent {
    Dil(Sequent),
    L(LSequent),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_literals() {
        assert_eq!(parse_formula("<+>").unwrap(), Formula::Unit(Polarity::Pos));
        assert_eq!(
            parse_formula("a ->[-] <+>").unwrap(),
            Formula::imp(Polarity::Neg, Formula::atom("a"), Formula::Unit(Polarity::Pos))
        );
        let f = parse_formula("a /\\[+] b ->[+] c").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Polarity::Pos,
                Formula::and(Polarity::Pos, Formula::atom("a"), Formula::atom("b")),
                Formula::atom("c")
            )
        );
        let g = parse_formula("a ->[+] b ->[-] c").unwrap();
        assert!(matches!(g, Formula::Imp(Polarity::Pos, _, ref r) if matches!(**r, Formula::Imp(..))));
    }

    #[test]
    fn term_literals() {
        assert_eq!(parse_term("\\x. x").unwrap(), Term::lam("x", Term::var("x")));
        let t = parse_term("nu x . in1 (nu y . in2 <y, triv> * x : [a @ n]) * x : [a @ n]").unwrap();
        assert_eq!(t.cut_count(), 2);
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn sequent_with_empty_parts() {
        let s = parse_sequent("; |- + a @ n").unwrap();
        assert!(s.graph.is_empty() && s.ctx.is_empty());
        let s2 = parse_sequent(". ; . |- - <-> @ n").unwrap();
        assert_eq!(s2.formula, Formula::Unit(Polarity::Neg));
        let s3 = parse_sequent("n1 <=[+] n2 ; x : -<+> @ n1, + a @ n2 |- + a @ n2").unwrap();
        assert_eq!(s3.ctx.len(), 2);
        assert_eq!(parse_sequent(&s3.to_string()).unwrap(), s3);
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse_formula("a ->[+]").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        assert!(e.expected.iter().any(|x| x.contains("<+>")));
        let e = parse_term("\\x x").unwrap_err();
        assert_eq!(e.expected, vec!["`.`".to_string()]);
        let e = parse_sequent("\n . ; . |- + a").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn l_sequents() {
        let s = parse_l_sequent("n : a |-[ (n, m) ] m : a => (b -< true)").unwrap();
        assert_eq!(s.left.len(), 1);
        assert_eq!(s.graph.len(), 1);
        assert_eq!(parse_l_sequent(&s.to_string()).unwrap(), s);
        assert!(matches!(parse_any_sequent("|-[] n : true").unwrap(), AnySequent::L(_)));
    }
}
