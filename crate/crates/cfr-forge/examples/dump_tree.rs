//! Writes the line-oriented debug dump of a game tree to stdout.
//!
//!     cargo run --release --example dump_tree [-- <game>]

use cfr_forge::games::GameSpec;

fn main() {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "kuhn".to_string());
    let tree = GameSpec::parse(&spec)
        .and_then(|s| s.build())
        .expect("buildable game spec");
    let mut stdout = std::io::stdout().lock();
    tree.dump(&mut stdout).expect("write to stdout");
}
