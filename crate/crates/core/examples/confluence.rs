// Generate well-typed terms and probe their normal forms under many
// reduction orders.

use dualized::generate::typed_terms;
use dualized::reduce::{confluence_probe, step_all, Verdict};
use dualized::typing::accepts;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let terms = typed_terms(11, 25, 6);
    let mut redexes = 0;
    for t in &terms {
        for r in step_all(&t.term) {
            redexes += 1;
            assert!(accepts(&t.goal, &r.result), "preservation failed for {}", t.term);
        }
        match confluence_probe(&t.term, 10, 0, 100_000)? {
            Verdict::Confluent(_) => {}
            Verdict::Diverged(forms) => panic!("{} has {} normal forms", t.term, forms.len()),
        }
    }
    println!("{} terms, {redexes} one-step successors, all preserved and confluent", terms.len());
    let first = &terms[0];
    println!("e.g. {}\n  |- {}", first.goal, first.term);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
