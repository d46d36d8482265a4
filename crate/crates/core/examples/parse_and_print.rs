// Parse formulas, terms and sequents, and print them back.

use dualized::{parse_formula, parse_sequent, parse_term};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = parse_formula("a /\\[-] (a ->[-] <+>)")?;
    println!("formula   {a}  (depth {})", a.depth());
    assert_eq!(parse_formula(&a.to_string())?, a);

    let t = parse_term("nu x . in1 (nu y . in2 <y, triv> * x : [a @ n]) * x : [a @ n]")?;
    println!("term      {t}");
    assert_eq!(parse_term(&t.to_string())?, t);

    let s = parse_sequent("n1 <=[+] n2 ; x : - b @ n2 |- + b ->[+] b @ n1")?;
    println!("sequent   {s}");
    println!("nodes     {:?}", s.node_list().iter().map(|n| n.as_str()).collect::<Vec<_>>());

    match parse_formula("a ->[+") {
        Err(e) => println!("error     {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
