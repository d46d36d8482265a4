// The derived case eliminator for disjunction, expanded into cuts and
// type-checked in both polarities.

use dualized::parse::parse_goal;
use dualized::typing::{check, elaborate_case};
use dualized::{parse_formula, parse_term, NodeId, Polarity};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = parse_formula("a")?;
    let c = parse_formula("a")?;
    let n = NodeId::new("n");
    let t = elaborate_case(&parse_term("s")?, "x", &parse_term("x")?, &parse_term("x")?, Polarity::Pos, &a, &a, &c, &n);
    println!("{t}");

    let (goal, _) = parse_goal(". ; s : + a /\\[-] a @ n |- + a @ n |- triv")?;
    let trace = check(&goal, &t)?;
    println!("checks at {goal} ({} rules)", trace.size());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
