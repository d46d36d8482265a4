// The labelled calculus L: proof search, checking, and the translations to
// and from DIL.

use dualized::deriv_format::print_l_derivation;
use dualized::dil::prove_dil;
use dualized::lcalc::{activations, check_l, d_graph, graphs_isomorphic, l_graph, l_sequent, prove_l};
use dualized::parse::{parse_graph, parse_l_sequent};
use dualized::parse_sequent;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = parse_l_sequent("n : a & b |-[] n : b | a")?;
    let d = prove_l(&s, 6).ok_or("no L derivation")?;
    check_l(&d)?;
    print!("{}", print_l_derivation(&d));

    for act in activations(&s)? {
        let found = prove_dil(&act, 8).is_ok();
        println!("activation {act}  provable: {found}");
    }

    let dil = parse_sequent("n1 <=[-] n2 ; + a @ n2 |- - b @ n1")?;
    println!("to L: {}", l_sequent(&dil));

    let g = parse_graph("n1 <=[+] n2, n3 <=[-] n2")?;
    let back = d_graph(&l_graph(&g));
    println!("{g}  ->  {back}  isomorphic: {}", graphs_isomorphic(&g, &back));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
