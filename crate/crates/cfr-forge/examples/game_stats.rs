//! Builds the benchmark games and compares their structural counts against
//! the published reference sizes. The largest battleship configuration is
//! skipped unless `--all` is passed.
//!
//!     cargo run --release --example game_stats [-- --all]

use cfr_forge::games::{reference_specs, reference_stats, GameSpec};

fn main() {
    let all = std::env::args().any(|a| a == "--all");
    println!(
        "{:<20} {:>10} {:>9} {:>10} {:>6} {:>12}  verdict",
        "game", "histories", "infosets", "terminals", "depth", "max_infoset"
    );
    for spec in reference_specs() {
        if !all && spec == (GameSpec::Battleship { rows: 4, cols: 3, shots: 2 }) {
            println!("{:<20} (skipped; pass --all to build 5.5M nodes)", spec.name());
            continue;
        }
        let tree = spec.build().expect("reference configurations build");
        let stats = tree.stats();
        let expected = reference_stats(&spec).unwrap();
        println!(
            "{:<20} {:>10} {:>9} {:>10} {:>6} {:>12}  {}",
            spec.name(),
            stats.histories,
            stats.infosets,
            stats.terminal_histories,
            stats.depth,
            stats.max_infoset_size,
            if stats == expected { "matches reference" } else { "MISMATCH" }
        );
    }
}
