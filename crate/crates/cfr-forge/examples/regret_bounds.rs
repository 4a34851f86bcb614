//! Tracks the realized counterfactual regret against the two theoretical
//! bound expressions while the adaptive solver runs on Kuhn poker.
//!
//!     cargo run --release --example regret_bounds

use cfr_forge::engine::{Averaging, Solver, UpdateMode};
use cfr_forge::games::build_kuhn;
use cfr_forge::regret::{Variant, VariantTag};

fn main() {
    let game = build_kuhn();
    let mut solver = Solver::new(
        &game,
        Variant::new(VariantTag::ApcfrPlus),
        UpdateMode::Alternating,
        Averaging::Quadratic,
        true,
    );
    for t in 1..=1000u64 {
        solver.iterate();
        if t.is_power_of_two() || t == 1000 {
            let totals = solver.totals();
            println!(
                "t={t:5}  sum|r-r'|^2 {:9.4}  sum|dR|^2 {:8.4}  bound1 {:8.4}  bound2 {:8.4}",
                totals.total_pred_gap, totals.total_state_gap, totals.total_bound1, totals.total_bound2
            );
        }
    }

    println!();
    println!("per-infoset realized regret vs min(bound1, bound2) at t=1000:");
    let diags = solver.diagnostics().unwrap();
    let mut satisfied = 0;
    for id in game.infoset_ids() {
        let check = diags[id.idx()].bound_check();
        if check.satisfied {
            satisfied += 1;
        }
        if id.idx() < 4 {
            println!(
                "  {id}: realized {:+.4}  bound1 {:.4}  bound2 {:.4}  {}",
                check.realized,
                check.bound1,
                check.bound2,
                if check.satisfied { "ok" } else { "VIOLATED" }
            );
        }
    }
    println!("  ... {satisfied}/{} infosets within both bounds", game.num_infosets());
}
