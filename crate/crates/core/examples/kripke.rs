// Finite Kripke semantics: validity by enumeration and countermodels.

use dualized::kripke::{enumerate_models, interp_formula, validate, Validity};
use dualized::{parse_formula, parse_sequent};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let atoms = vec!["a".to_string()];
    println!("{} models with at most 3 worlds over one atom", enumerate_models(3, &atoms).len());

    for text in [". ; . |- + a /\\[-] (a ->[-] <+>) @ n", ". ; . |- + a @ n", ". ; . |- + ((a ->[+] <->) ->[+] <->) ->[+] a @ n"] {
        let s = parse_sequent(text)?;
        match validate(&s, 3, &atoms)? {
            Validity::Valid => println!("{s}: valid"),
            Validity::Countermodel(c) => {
                assert!(c.refutes(&s));
                println!("{s}: countermodel\n{c}");
            }
        }
    }

    let m = &enumerate_models(1, &atoms)[0];
    let em = parse_formula("a /\\[-] (a ->[-] <+>)")?;
    println!("excluded middle in world 0 of the first model: {}", interp_formula(m, 0, &em)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
