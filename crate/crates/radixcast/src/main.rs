use std::io::{Read, Write};

use radixcast::cli;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();

    let mut stdin = String::new();
    if arg_refs.iter().any(|&a| a == "-") {
        std::io::stdin()
            .read_to_string(&mut stdin)
            .expect("failed to read stdin");
    }

    let outcome = cli::run(&arg_refs, &stdin);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(outcome.code);
}
