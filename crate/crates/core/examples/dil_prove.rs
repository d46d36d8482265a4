// Bounded DIL proof search and the derivation file format.

use dualized::deriv_format::{parse_dil_derivation, print_dil_derivation};
use dualized::dil::{check_dil, prove_dil, CutMode};
use dualized::parse_sequent;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = parse_sequent(". ; . |- + a /\\[-] (a ->[-] <+>) @ n")?;
    let d = prove_dil(&s, 8)?;
    println!("found a derivation of depth {} with {} rules", d.depth(), d.size());
    let text = print_dil_derivation(&d);
    print!("{text}");

    let back = parse_dil_derivation(&text)?;
    check_dil(&back, CutMode::Axiom)?;
    println!("re-checked in axiom-cut mode");

    let bare = parse_sequent(". ; . |- + a @ n")?;
    if let Err(e) = prove_dil(&bare, 8) {
        println!("{bare}: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
