//! Tracking for the quantities in the convergence analysis: realized
//! counterfactual regrets and the two bound expressions they are provably
//! dominated by.
//!
//! For a step with asymmetry `a`, observed regret `r_t`, previous regret
//! `r_prev`, and accumulator step `R_new - R_old`, the two running sums are
//!
//! * `bound1_sum += |r_t - r_prev|^2 / (1 + a) + a * |R_new - R_old|^2`
//! * `bound2_sum += |r_t - r_prev / (1 + a)|^2`
//!
//! and the realized regret at any point never exceeds
//! `min(sqrt(bound1_sum), sqrt(bound2_sum))`.

use crate::regret::{LocalRegretState, Variant};

/// Per-infoset diagnostic accumulators.
#[derive(Debug, Clone)]
pub struct InfosetDiagnostics {
    /// Signed cumulative instantaneous regret per action.
    cum_regret: Vec<f64>,
    bound1_sum: f64,
    bound2_sum: f64,
    steps: u64,
}

/// Result of comparing the realized regret against both bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub realized: f64,
    pub bound1: f64,
    pub bound2: f64,
    pub satisfied: bool,
}

impl InfosetDiagnostics {
    pub fn new(num_actions: usize) -> InfosetDiagnostics {
        InfosetDiagnostics {
            cum_regret: vec![0.0; num_actions],
            bound1_sum: 0.0,
            bound2_sum: 0.0,
            steps: 0,
        }
    }

    pub fn cum_regret(&self) -> &[f64] {
        &self.cum_regret
    }

    pub fn bound1_sum(&self) -> f64 {
        self.bound1_sum
    }

    pub fn bound2_sum(&self) -> f64 {
        self.bound2_sum
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Folds one update into the accumulators. `alpha` must be the asymmetry
    /// actually applied at this step (0 for the plain predictive rule).
    pub fn record_step(
        &mut self,
        r_t: &[f64],
        r_prev: &[f64],
        r_new: &[f64],
        r_old: &[f64],
        alpha: f64,
    ) {
        let n = self.cum_regret.len();
        assert!(
            r_t.len() == n && r_prev.len() == n && r_new.len() == n && r_old.len() == n,
            "diagnostic vector length mismatch"
        );
        for (c, &x) in self.cum_regret.iter_mut().zip(r_t) {
            *c += x;
        }
        let step = 1.0 + alpha;
        let mut pred_gap = 0.0;
        let mut state_gap = 0.0;
        let mut scaled_gap = 0.0;
        for i in 0..n {
            let d = r_t[i] - r_prev[i];
            pred_gap += d * d;
            let s = r_new[i] - r_old[i];
            state_gap += s * s;
            let g = r_t[i] - r_prev[i] / step;
            scaled_gap += g * g;
        }
        self.bound1_sum += pred_gap / step + alpha * state_gap;
        self.bound2_sum += scaled_gap;
        self.steps += 1;
    }

    /// The realized counterfactual regret: the best action's cumulative
    /// advantage over the strategies actually played. May be negative.
    pub fn realized_regret(&self) -> f64 {
        self.cum_regret.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Compares the realized regret against both bound expressions.
    pub fn bound_check(&self) -> BoundCheck {
        let realized = if self.steps == 0 { 0.0 } else { self.realized_regret() };
        let bound1 = self.bound1_sum.sqrt();
        let bound2 = self.bound2_sum.sqrt();
        BoundCheck {
            realized,
            bound1,
            bound2,
            satisfied: realized <= bound1.min(bound2) + 1e-6,
        }
    }
}

/// Aggregates over all infosets of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticTotals {
    /// Sum over infosets of the prediction-gap accumulators.
    pub total_pred_gap: f64,
    /// Sum over infosets of the accumulator-step accumulators.
    pub total_state_gap: f64,
    /// Sum over infosets of `bound1_sum` (zero when diagnostics are off).
    pub total_bound1: f64,
    /// Sum over infosets of `bound2_sum` (zero when diagnostics are off).
    pub total_bound2: f64,
    /// Mean of the current per-infoset asymmetry values.
    pub mean_alpha: f64,
    /// Max of the current per-infoset asymmetry values.
    pub max_alpha: f64,
}

/// Folds the per-infoset accumulators into totals. The gap sums come from the
/// minimizer states; the bound sums from the diagnostics when enabled.
pub fn aggregate(
    diags: Option<&[InfosetDiagnostics]>,
    states: &[LocalRegretState],
    variant: &Variant,
) -> DiagnosticTotals {
    let mut totals = DiagnosticTotals {
        total_pred_gap: 0.0,
        total_state_gap: 0.0,
        total_bound1: 0.0,
        total_bound2: 0.0,
        mean_alpha: 0.0,
        max_alpha: 0.0,
    };
    for s in states {
        totals.total_pred_gap += s.sum_pred_gap();
        totals.total_state_gap += s.sum_state_gap();
        let a = s.compute_alpha(variant);
        totals.mean_alpha += a;
        totals.max_alpha = totals.max_alpha.max(a);
    }
    if !states.is_empty() {
        totals.mean_alpha /= states.len() as f64;
    }
    if let Some(diags) = diags {
        for d in diags {
            totals.total_bound1 += d.bound1_sum();
            totals.total_bound2 += d.bound2_sum();
        }
    }
    totals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regret::VariantTag;

    #[test]
    fn unchanged_step_only_moves_bound2() {
        let mut d = InfosetDiagnostics::new(2);
        let r = [0.5, -0.5];
        d.record_step(&r, &r, &[1.0, 0.0], &[1.0, 0.0], 2.0);
        assert_eq!(d.bound1_sum(), 0.0);
        // |r - r/3|^2 = (2/3)^2 * |r|^2 = 4/9 * 0.5
        assert!((d.bound2_sum() - 4.0 / 9.0 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_alpha_makes_bounds_coincide() {
        let mut d = InfosetDiagnostics::new(2);
        d.record_step(&[1.0, -1.0], &[0.25, 0.5], &[2.0, 0.0], &[1.5, 0.5], 0.0);
        assert_eq!(d.bound1_sum(), d.bound2_sum());
    }

    #[test]
    fn worked_increment_example() {
        let mut d = InfosetDiagnostics::new(2);
        d.record_step(&[1.0, -1.0], &[0.0, 0.0], &[1.0, 0.0], &[0.0, 0.0], 2.0);
        // pred gap 2 scaled by 1/3, plus 2 * state gap 1
        assert!((d.bound1_sum() - (2.0 / 3.0 + 2.0)).abs() < 1e-15);
        assert!((d.bound2_sum() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn realized_regret_takes_the_max_and_may_be_negative() {
        let mut d = InfosetDiagnostics::new(2);
        d.record_step(&[0.4, -0.2], &[0.0, 0.0], &[0.4, 0.0], &[0.0, 0.0], 0.0);
        assert!((d.realized_regret() - 0.4).abs() < 1e-15);

        let mut d = InfosetDiagnostics::new(2);
        d.record_step(&[-1.0, -2.0], &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], 0.0);
        assert!((d.realized_regret() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn trivial_bound_check() {
        let mut d = InfosetDiagnostics::new(2);
        d.record_step(&[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], 0.0);
        let check = d.bound_check();
        assert_eq!((check.realized, check.bound1, check.bound2), (0.0, 0.0, 0.0));
        assert!(check.satisfied);
    }

    #[test]
    fn aggregate_of_single_infoset_equals_its_values() {
        let mut d = InfosetDiagnostics::new(2);
        d.record_step(&[1.0, -1.0], &[0.0, 0.0], &[1.0, 0.0], &[0.0, 0.0], 0.0);
        let mut s = LocalRegretState::new(2);
        let v = Variant::new(VariantTag::PcfrPlus);
        s.observe_regret(&[1.0, -1.0], &v, 1).unwrap();
        let totals = aggregate(Some(std::slice::from_ref(&d)), std::slice::from_ref(&s), &v);
        assert_eq!(totals.total_pred_gap, s.sum_pred_gap());
        assert_eq!(totals.total_state_gap, s.sum_state_gap());
        assert_eq!(totals.total_bound1, d.bound1_sum());
        assert_eq!(totals.mean_alpha, 0.0);
    }
}
