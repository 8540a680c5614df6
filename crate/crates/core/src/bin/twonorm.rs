use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let outcome = twonorm::cli::run(&args);
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{}", outcome.stdout);
    if let Some(diag) = outcome.stderr {
        let _ = writeln!(std::io::stderr(), "{diag}");
    }
    std::process::exit(outcome.code);
}
