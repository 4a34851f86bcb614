//! Solves Kuhn poker with the fixed-asymmetry predictive solver and prints
//! the convergence trajectory plus the final averaged strategy.
//!
//!     cargo run --release --example solve_kuhn

use cfr_forge::engine::{Averaging, Solver, UpdateMode};
use cfr_forge::exploitability::{expected_value, exploitability};
use cfr_forge::games::build_kuhn;
use cfr_forge::regret::{Variant, VariantTag};

fn main() {
    let game = build_kuhn();
    let mut solver = Solver::new(
        &game,
        Variant::new(VariantTag::SapcfrPlus),
        UpdateMode::Alternating,
        Averaging::Quadratic,
        false,
    );

    println!("solving {} ({} nodes, {} infosets)", game.name(), game.num_nodes(), game.num_infosets());
    for t in 1..=1000u64 {
        solver.iterate();
        if t.is_power_of_two() || t == 1000 {
            let avg = solver.average();
            println!("  t={t:5}  exploitability {:.3e}", exploitability(&game, &avg));
        }
    }

    let avg = solver.average();
    println!();
    println!("game value for the first player: {:+.6} (exact: -1/36 = {:+.6})", expected_value(&game, &avg), -1.0 / 36.0);
    println!();
    println!("average strategy (probability of the aggressive action):");
    for id in game.infoset_ids() {
        let inf = game.infoset(id);
        let sigma = avg.get(id);
        println!("  {} {:?}: {:.4}", id, inf.player, sigma[1]);
    }
}
