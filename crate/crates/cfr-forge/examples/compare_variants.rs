//! Runs several solvers on one game and prints final exploitabilities with
//! percentage deltas against the plain predictive baseline.
//!
//!     cargo run --release --example compare_variants [-- <game> <iters>]

use cfr_forge::engine::{run_on, Averaging, LogSchedule, RunConfig, UpdateMode};
use cfr_forge::games::GameSpec;
use cfr_forge::regret::{Variant, VariantTag};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let game_spec = args.first().map(String::as_str).unwrap_or("leduc");
    let iters: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2000);

    let game = GameSpec::parse(game_spec).expect("game spec");
    let tree = game.build().expect("buildable game");
    println!("{} for {iters} iterations (alternating, quadratic averaging)", game.name());

    let variants = [
        VariantTag::Cfr,
        VariantTag::CfrPlus,
        VariantTag::Dcfr,
        VariantTag::PcfrPlus,
        VariantTag::ApcfrPlus,
        VariantTag::SapcfrPlus,
        VariantTag::ApdcfrPlus,
    ];
    let mut baseline = None;
    for tag in variants {
        let variant = Variant::new(tag);
        let averaging = if tag == VariantTag::ApdcfrPlus {
            Averaging::ApdWeighted
        } else {
            Averaging::Quadratic
        };
        let config = RunConfig {
            game,
            variant,
            iterations: iters,
            update_mode: UpdateMode::Alternating,
            averaging,
            log_schedule: LogSchedule::Final,
            diagnostics: false,
        };
        let out = run_on(&tree, &config, &mut |_| {});
        let eps = out.records.last().unwrap().exploitability;
        if tag == VariantTag::PcfrPlus {
            baseline = Some(eps);
        }
        match baseline {
            Some(base) if tag != VariantTag::PcfrPlus => {
                println!("  {:10} {eps:.3e}  ({:+.1}%)", variant.name(), (eps - base) / base * 100.0)
            }
            _ => println!("  {:10} {eps:.3e}", variant.name()),
        }
    }
}
