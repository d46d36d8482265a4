// Weakening, exchange and moving a hypothesis to the right of the turnstile.

use dualized::dil::{check_dil, exchange, left_to_right, prove_dil, weaken, CutMode};
use dualized::{parse_sequent, Formula, Hyp, Polarity};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = parse_sequent(". ; - a @ n, + b @ n |- + b /\\[+] b @ n")?;
    let d = prove_dil(&s, 4)?;
    println!("{}", d.conclusion);

    let w = weaken(&d, Hyp::new(Polarity::Pos, Formula::atom("c"), "m"));
    check_dil(&w, CutMode::Axiom)?;
    println!("weakened:  {}", w.conclusion);

    let x = exchange(&w, &[2, 1, 0])?;
    check_dil(&x, CutMode::Axiom)?;
    println!("exchanged: {}", x.conclusion);

    let l = left_to_right(&d, 0)?;
    check_dil(&l, CutMode::Axiom)?;
    println!("moved:     {}  (root rule {})", l.conclusion, l.rule);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
