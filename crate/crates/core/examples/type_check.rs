// Type-check the excluded-middle term, inspect its derivation, and erase it
// to the classical system.

use dualized::parse::parse_goal;
use dualized::typing::{check, classical_check, erase_worlds, verify_trace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let text = include_str!("data/excluded_middle.goal");
    let (goal, term) = parse_goal(text)?;
    let trace = check(&goal, &term)?;
    println!("{goal}\n  |- {term}");
    println!("derivation: {} rule applications", trace.size());
    verify_trace(&trace, &term)?;

    let classical = erase_worlds(&goal.ctx);
    classical_check(&classical, &term, goal.pol, &goal.formula)?;
    println!("classical erasure checks");

    let (bad_goal, bad_term) = parse_goal(". ; . |- + a @ n |- triv")?;
    if let Err(e) = check(&bad_goal, &bad_term) {
        println!("rejected: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
