use std::process::ExitCode;

use cfr_forge::bench::{self, Command};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") || args.is_empty() {
        print!("{}", bench::USAGE);
        return ExitCode::from(if args.is_empty() { 2 } else { 0 });
    }
    match bench::parse_command(&args) {
        Ok(Command::Bench(plan)) => ExitCode::from(bench::execute(&plan) as u8),
        Ok(Command::Stats(plan)) => {
            let mut stdout = std::io::stdout().lock();
            ExitCode::from(bench::stats_command(&plan, &mut stdout) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!();
            eprint!("{}", bench::USAGE);
            ExitCode::from(2)
        }
    }
}
