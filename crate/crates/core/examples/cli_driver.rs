// Drive the command line in-process and capture its output.

use dualized::cli::run;

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("dualized").chain(args.iter().copied()), &mut out, &mut err);
    let mut text = String::from_utf8_lossy(&out).into_owned();
    text.push_str(&String::from_utf8_lossy(&err));
    (code, text)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let app = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/application.term");
    let goal = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/excluded_middle.goal");
    for args in [
        vec!["normalize", app, "--trace"],
        vec!["check", goal],
        vec!["reach", "n1 <=[+] n2", "n2", "-", "n1"],
        vec!["kripke-validate", "; |- + a @ n", "--max-worlds", "1", "--atoms", "a"],
        vec!["translate", "--to-dil", "n : a |-[] n : a"],
    ] {
        let (code, text) = invoke(&args);
        println!("$ dualized {}\n{text}[exit {code}]", args.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
