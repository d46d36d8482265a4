// Normalize terms with both strategies and print reduction traces.

use dualized::parse_term;
use dualized::reduce::{normalize, step_all, Strategy};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let app = parse_term(include_str!("data/application.term"))?;
    let nf = normalize(&app, 1000, Strategy::LeftmostOutermost)?;
    for (i, r) in nf.trace.iter().enumerate() {
        println!("{} {}", i + 1, r.trace_line());
    }

    let eta = parse_term("\\z. nu y . (\\x. x) * <z, y> : [a ->[+] a @ n]")?;
    println!("redexes of {eta}:");
    for r in step_all(&eta) {
        println!("  {}", r.trace_line());
    }
    let lo = normalize(&eta, 1000, Strategy::LeftmostOutermost)?;
    let random = normalize(&eta, 1000, Strategy::Random(7))?;
    println!("lo -> {}  rand:7 -> {}", lo.term, random.term);
    assert!(lo.term.alpha_eq(&random.term));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
