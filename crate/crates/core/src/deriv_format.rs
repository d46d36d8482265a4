//! Parenthesized derivation files shared by DIL and L:
//!
//! ```text
//! (rule imp :conclusion ". ; . |- + a ->[+] a @ n" :witness (fresh n%0)
//!   :children ((rule ax :conclusion "..." :witness (index 0) :children ())))
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::dil::{DilDerivation, DilRule, DilWitness};
use crate::lcalc::{LDerivation, LRule, LWitness};
use crate::parse::{parse_formula, parse_l_sequent, parse_sequent, ParseError};
use crate::syntax::NodeId;
use crate::term::Side;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("in {what}: {source}")]
    Embedded {
        what: String,
        #[source]
        source: ParseError,
    },
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
}

impl Sexp {
    fn describe(&self) -> String {
        match self {
            Sexp::Atom(a) => format!("`{a}`"),
            Sexp::Str(s) => format!("string {s:?}"),
            Sexp::List(_) => "a list".into(),
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.line, col: self.col, message: message.into() }
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, FormatError> {
        self.skip_blank();
        match self.chars.peek().copied() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items));
                        }
                        None => return Err(self.err("unclosed `(`")),
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(self.err("unexpected `)`")),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.err("unterminated string")),
                        Some('"') => return Ok(Sexp::Str(s)),
                        Some('\\') => match self.bump() {
                            Some('n') => s.push('\n'),
                            Some(c) => s.push(c),
                            None => return Err(self.err("unterminated string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(s))
            }
        }
    }
}

fn read_one(text: &str) -> Result<Sexp, FormatError> {
    let mut r = Reader { chars: text.chars().peekable(), line: 1, col: 1 };
    let e = r.read()?;
    r.skip_blank();
    if r.chars.peek().is_some() {
        return Err(r.err("trailing input after the derivation"));
    }
    Ok(e)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn shape(msg: impl Into<String>) -> FormatError {
    FormatError::Shape(msg.into())
}

/// A node split into its rule name, conclusion text, witness and children.
struct RawNode<'a> {
    rule: &'a str,
    conclusion: &'a str,
    witness: &'a Sexp,
    children: &'a [Sexp],
}

fn raw_node(e: &Sexp) -> Result<RawNode<'_>, FormatError> {
    let Sexp::List(items) = e else { return Err(shape(format!("expected a `(rule ...)` node, found {}", e.describe()))) };
    let (Some(Sexp::Atom(head)), Some(Sexp::Atom(rule))) = (items.first(), items.get(1)) else {
        return Err(shape("a node starts with `rule <name>`"));
    };
    if head != "rule" {
        return Err(shape(format!("a node starts with `rule`, found `{head}`")));
    }
    let (mut conclusion, mut witness, mut children) = (None, None, None);
    let mut rest = items[2..].iter();
    while let Some(k) = rest.next() {
        let Sexp::Atom(k) = k else { return Err(shape(format!("expected a field name, found {}", k.describe()))) };
        let v = rest.next().ok_or_else(|| shape(format!("field `{k}` has no value")))?;
        match (k.as_str(), v) {
            (":conclusion", Sexp::Str(s)) => conclusion = Some(s.as_str()),
            (":witness", v) => witness = Some(v),
            (":children", Sexp::List(cs)) => children = Some(cs.as_slice()),
            (k, v) => return Err(shape(format!("bad field `{k}` with value {}", v.describe()))),
        }
    }
    Ok(RawNode {
        rule,
        conclusion: conclusion.ok_or_else(|| shape(format!("`{rule}` node has no :conclusion")))?,
        witness: witness.ok_or_else(|| shape(format!("`{rule}` node has no :witness")))?,
        children: children.unwrap_or(&[]),
    })
}

fn witness_parts(w: &Sexp) -> Result<(&str, Vec<&Sexp>), FormatError> {
    match w {
        Sexp::Atom(a) if a == "none" => Ok(("none", vec![])),
        Sexp::List(items) => match items.split_first() {
            Some((Sexp::Atom(tag), args)) => Ok((tag.as_str(), args.iter().collect())),
            _ => Err(shape("a witness list starts with its tag")),
        },
        _ => Err(shape(format!("bad witness {}", w.describe()))),
    }
}

fn atom_arg(e: &Sexp) -> Result<&str, FormatError> {
    match e {
        Sexp::Atom(a) => Ok(a),
        other => Err(shape(format!("expected a name, found {}", other.describe()))),
    }
}

fn index_arg(e: &Sexp) -> Result<usize, FormatError> {
    let a = atom_arg(e)?;
    a.parse().map_err(|_| shape(format!("expected an index, found `{a}`")))
}

fn node_args<const N: usize>(tag: &str, args: &[&Sexp]) -> Result<[NodeId; N], FormatError> {
    if args.len() != N {
        return Err(shape(format!("witness `{tag}` takes {N} arguments, found {}", args.len())));
    }
    let mut out = Vec::with_capacity(N);
    for a in args {
        out.push(NodeId::new(atom_arg(a)?));
    }
    Ok(out.try_into().expect("length checked"))
}

fn dil_witness(w: &Sexp) -> Result<DilWitness, FormatError> {
    let (tag, args) = witness_parts(w)?;
    let one = || {
        if args.len() == 1 {
            Ok(args[0])
        } else {
            Err(shape(format!("witness `{tag}` takes one argument")))
        }
    };
    Ok(match tag {
        "none" => DilWitness::None,
        "index" => DilWitness::Index(index_arg(one()?)?),
        "entry" => DilWitness::Entry(index_arg(one()?)?),
        "side" => match index_arg(one()?)? {
            1 => DilWitness::Side(Side::First),
            2 => DilWitness::Side(Side::Second),
            d => return Err(shape(format!("side must be 1 or 2, found {d}"))),
        },
        "fresh" => DilWitness::Fresh(NodeId::new(atom_arg(one()?)?)),
        "node" => DilWitness::Node(NodeId::new(atom_arg(one()?)?)),
        "cut" => {
            let [Sexp::Str(b), n] = args.as_slice() else {
                return Err(shape("witness `cut` takes a quoted formula and a node"));
            };
            let b = parse_formula(b).map_err(|source| FormatError::Embedded { what: "cut formula".into(), source })?;
            DilWitness::Cut(b, NodeId::new(atom_arg(n)?))
        }
        t => return Err(shape(format!("unknown DIL witness `{t}`"))),
    })
}

fn l_witness(w: &Sexp) -> Result<LWitness, FormatError> {
    let (tag, args) = witness_parts(w)?;
    Ok(match tag {
        "none" => LWitness::None,
        "node" => {
            let [n] = node_args::<1>(tag, &args)?;
            LWitness::Node(n)
        }
        "fresh" => {
            let [n] = node_args::<1>(tag, &args)?;
            LWitness::Fresh(n)
        }
        "edge" => {
            let [a, b] = node_args::<2>(tag, &args)?;
            LWitness::Edge(a, b)
        }
        "edges" => {
            let [a, b, c] = node_args::<3>(tag, &args)?;
            LWitness::Edges(a, b, c)
        }
        t => return Err(shape(format!("unknown L witness `{t}`"))),
    })
}

fn dil_from(e: &Sexp) -> Result<DilDerivation, FormatError> {
    let raw = raw_node(e)?;
    let rule = DilRule::from_name(raw.rule).ok_or_else(|| shape(format!("unknown DIL rule `{}`", raw.rule)))?;
    let conclusion = parse_sequent(raw.conclusion)
        .map_err(|source| FormatError::Embedded { what: format!("conclusion of `{}`", raw.rule), source })?;
    let witness = dil_witness(raw.witness)?;
    let children = raw.children.iter().map(dil_from).collect::<Result<_, _>>()?;
    Ok(DilDerivation { rule, conclusion, witness, children })
}

fn l_from(e: &Sexp) -> Result<LDerivation, FormatError> {
    let raw = raw_node(e)?;
    let rule = LRule::from_name(raw.rule).ok_or_else(|| shape(format!("unknown L rule `{}`", raw.rule)))?;
    let conclusion = parse_l_sequent(raw.conclusion)
        .map_err(|source| FormatError::Embedded { what: format!("conclusion of `{}`", raw.rule), source })?;
    let witness = l_witness(raw.witness)?;
    let children = raw.children.iter().map(l_from).collect::<Result<_, _>>()?;
    Ok(LDerivation { rule, conclusion, witness, children })
}

pub fn parse_dil_derivation(text: &str) -> Result<DilDerivation, FormatError> {
    dil_from(&read_one(text)?)
}

pub fn parse_l_derivation(text: &str) -> Result<LDerivation, FormatError> {
    l_from(&read_one(text)?)
}

fn dil_witness_text(w: &DilWitness) -> String {
    match w {
        DilWitness::None => "none".into(),
        DilWitness::Index(k) => format!("(index {k})"),
        DilWitness::Entry(k) => format!("(entry {k})"),
        DilWitness::Side(d) => format!("(side {})", d.index()),
        DilWitness::Fresh(n) => format!("(fresh {n})"),
        DilWitness::Node(n) => format!("(node {n})"),
        DilWitness::Cut(b, n) => format!("(cut {} {n})", quote(&b.to_string())),
    }
}

fn l_witness_text(w: &LWitness) -> String {
    match w {
        LWitness::None => "none".into(),
        LWitness::Node(n) => format!("(node {n})"),
        LWitness::Fresh(n) => format!("(fresh {n})"),
        LWitness::Edge(a, b) => format!("(edge {a} {b})"),
        LWitness::Edges(a, b, c) => format!("(edges {a} {b} {c})"),
    }
}

fn write_node<T>(
    out: &mut String,
    d: &T,
    indent: usize,
    parts: &dyn Fn(&T) -> (String, String, String, &[T]),
) {
    let (rule, conclusion, witness, children) = parts(d);
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}(rule {rule} :conclusion {} :witness {witness} :children (", quote(&conclusion));
    if children.is_empty() {
        out.push_str("))");
        return;
    }
    for c in children {
        out.push('\n');
        write_node(out, c, indent + 1, parts);
    }
    out.push_str("))");
}

pub fn print_dil_derivation(d: &DilDerivation) -> String {
    let mut out = String::new();
    write_node(&mut out, d, 0, &|d: &DilDerivation| {
        (d.rule.to_string(), d.conclusion.to_string(), dil_witness_text(&d.witness), d.children.as_slice())
    });
    out.push('\n');
    out
}

pub fn print_l_derivation(d: &LDerivation) -> String {
    let mut out = String::new();
    write_node(&mut out, d, 0, &|d: &LDerivation| {
        (d.rule.name().to_string(), d.conclusion.to_string(), l_witness_text(&d.witness), d.children.as_slice())
    });
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dil::{check_dil, excluded_middle_derivation, prove_dil, CutMode};
    use crate::lcalc::{check_l, prove_l};
    use crate::parse::parse_sequent;
    use crate::syntax::Formula;

    #[test]
    fn dil_round_trip() {
        let d = excluded_middle_derivation(&Formula::atom("a"), &NodeId::new("n"));
        let text = print_dil_derivation(&d);
        assert_eq!(parse_dil_derivation(&text), Ok(d.clone()));
        let d = prove_dil(&parse_sequent(". ; . |- + (a ->[+] b) ->[+] a ->[+] b @ n").unwrap(), 6).unwrap();
        let back = parse_dil_derivation(&print_dil_derivation(&d)).unwrap();
        assert_eq!(back, d);
        assert_eq!(check_dil(&back, CutMode::Axiom), Ok(()));
    }

    #[test]
    fn cut_witness_round_trip() {
        let w = DilWitness::Cut(Formula::imp(crate::Polarity::Neg, Formula::atom("a"), Formula::atom("b")), "m".into());
        let text = dil_witness_text(&w);
        assert_eq!(dil_witness(&read_one(&text).unwrap()), Ok(w));
    }

    #[test]
    fn l_round_trip() {
        let s = crate::parse::parse_l_sequent("n : a |-[] n : a => a").unwrap();
        let d = prove_l(&s, 4).unwrap();
        let back = parse_l_derivation(&print_l_derivation(&d)).unwrap();
        assert_eq!(back, d);
        assert_eq!(check_l(&back), Ok(()));
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(parse_dil_derivation("(rule ax"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_dil_derivation("(rule zap :conclusion \"x\" :witness none)"), Err(FormatError::Shape(_))));
        let e = parse_dil_derivation("(rule unit :conclusion \". ; . |- +\" :witness none :children ())").unwrap_err();
        assert!(matches!(e, FormatError::Embedded { .. }));
    }
}
