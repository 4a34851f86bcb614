//! Exact best-response values and exploitability for a profile, reported in
//! both normalized and raw payoff units.
//!
//!     cargo run --release --example best_response

use cfr_forge::efg::PlayerId;
use cfr_forge::engine::{Averaging, Solver, StrategyProfile, UpdateMode};
use cfr_forge::exploitability::{best_response_value, exploitability};
use cfr_forge::games::build_leduc;
use cfr_forge::regret::{Variant, VariantTag};

fn report(game: &cfr_forge::GameTree, label: &str, profile: &StrategyProfile) {
    let br0 = best_response_value(game, profile, PlayerId::Player0).value;
    let br1 = best_response_value(game, profile, PlayerId::Player1).value;
    let eps = exploitability(game, profile);
    println!("{label}:");
    println!("  best response value, player 0: {br0:+.6}");
    println!("  best response value, player 1: {br1:+.6}");
    println!(
        "  exploitability: {eps:.6e} normalized = {:.6e} raw (scale {})",
        eps * game.payoff_scale(),
        game.payoff_scale()
    );
}

fn main() {
    let game = build_leduc(3).expect("standard leduc");
    report(&game, "uniform profile", &StrategyProfile::uniform(&game));

    let mut solver = Solver::new(
        &game,
        Variant::new(VariantTag::SapcfrPlus),
        UpdateMode::Alternating,
        Averaging::Quadratic,
        false,
    );
    for _ in 0..500 {
        solver.iterate();
    }
    report(&game, "averaged strategy after 500 iterations", &solver.average());
}
