// Polarized reachability, its fixpoint oracle, and raising a lower bound.

use dualized::parse::{parse_graph, parse_node};
use dualized::reach::{closure_oracle, raise, reaches};
use dualized::Polarity;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph("n1 <=[+] n2, n3 <=[-] n2")?;
    let (n1, n2, n3) = (parse_node("n1")?, parse_node("n2")?, parse_node("n3")?);
    for (a, p, b) in [(&n1, Polarity::Pos, &n2), (&n2, Polarity::Neg, &n1), (&n1, Polarity::Pos, &n3), (&n3, Polarity::Pos, &n1)] {
        println!("{a} <={p}* {b}  {}", reaches(&g, a, p, b));
    }

    let closure = closure_oracle(&g, &[]);
    println!("closure has {} triples", closure.len());
    for (a, p, b) in &closure {
        assert!(reaches(&g, a, *p, b));
    }

    let raised = raise(&n1, &n3, Polarity::Pos, &g);
    println!("raise n1 to n3: {raised}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
