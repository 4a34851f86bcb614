//! Shows how the learned asymmetry evolves: a rapid early climb that levels
//! off after roughly a hundred iterations.
//!
//!     cargo run --release --example alpha_dynamics

use cfr_forge::engine::{Averaging, Solver, UpdateMode};
use cfr_forge::games::build_leduc;
use cfr_forge::regret::{Variant, VariantTag};

fn main() {
    let game = build_leduc(3).expect("standard leduc");
    for tag in [VariantTag::ApcfrPlus, VariantTag::ApcfrPlusV2] {
        println!("{}:", Variant::new(tag).name());
        let mut solver = Solver::new(
            &game,
            Variant::new(tag),
            UpdateMode::Alternating,
            Averaging::Quadratic,
            false,
        );
        for t in 1..=2000u64 {
            solver.iterate();
            if t.is_power_of_two() || t == 2000 {
                let totals = solver.totals();
                let bar = "#".repeat((totals.mean_alpha * 12.0) as usize);
                println!("  t={t:5}  mean alpha {:.4}  max {:.4}  {bar}", totals.mean_alpha, totals.max_alpha);
            }
        }
    }
}
