//! Dualized intuitionistic logic (DIL) and dualized type theory (DTT).
//!
//! The crate covers the surface syntax, the reachability judgment on abstract
//! Kripke graphs, type checking and reduction of DTT terms, DIL derivation
//! checking and bounded proof search, the labelled calculus L with its
//! translations, and finite Kripke semantics.

pub mod cli;
pub mod deriv_format;
pub mod dil;
pub mod generate;
pub mod kripke;
pub mod lcalc;
pub mod parse;
pub mod reach;
pub mod reduce;
pub mod syntax;
pub mod term;
pub mod typing;

pub use parse::{parse_formula, parse_sequent, parse_term, ParseError};
pub use syntax::{flip, nodes_of, Context, Edge, Formula, Graph, Hyp, NodeId, Polarity, Sequent};
pub use term::{alpha_eq, subst_term, CutAnnot, Side, Term};
