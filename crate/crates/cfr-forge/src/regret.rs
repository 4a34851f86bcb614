//! Per-infoset local regret minimizers.
//!
//! Every algorithm in the suite is the same loop with a different local
//! update. The state keeps the implicit accumulated regret `R` and the last
//! observed instantaneous regret `r_prev`; prediction-based variants derive an
//! explicit accumulated regret from both before normalizing into a strategy.
//! The asymmetric variants shrink the prediction step to `1/(1+alpha)`, with
//! `alpha` either fixed at 2 or learned from the running gap accumulators.

use std::fmt;

/// Algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariantTag {
    Cfr,
    CfrPlus,
    Dcfr,
    PcfrPlus,
    ApcfrPlus,
    ApcfrPlusV2,
    SapcfrPlus,
    ApdcfrPlus,
}

impl VariantTag {
    pub const ALL: [VariantTag; 8] = [
        VariantTag::Cfr,
        VariantTag::CfrPlus,
        VariantTag::Dcfr,
        VariantTag::PcfrPlus,
        VariantTag::ApcfrPlus,
        VariantTag::ApcfrPlusV2,
        VariantTag::SapcfrPlus,
        VariantTag::ApdcfrPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VariantTag::Cfr => "cfr",
            VariantTag::CfrPlus => "cfr+",
            VariantTag::Dcfr => "dcfr",
            VariantTag::PcfrPlus => "pcfr+",
            VariantTag::ApcfrPlus => "apcfr+",
            VariantTag::ApcfrPlusV2 => "apcfr+v2",
            VariantTag::SapcfrPlus => "sapcfr+",
            VariantTag::ApdcfrPlus => "apdcfr+",
        }
    }

    /// Variants whose implicit update floors the accumulator at zero.
    pub fn is_plus_family(self) -> bool {
        !matches!(self, VariantTag::Cfr | VariantTag::Dcfr)
    }
}

/// Algorithm plus hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Variant {
    pub tag: VariantTag,
    pub params: Hyperparams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    /// Cap on the learned asymmetry.
    pub alpha_max: f64,
    /// Discount-rate numerator scale for the discounted predictive variant.
    pub lambda: f64,
    /// Discount-rate denominator offset for the discounted predictive variant.
    pub kappa: f64,
    /// Discount-rate exponent for the discounted predictive variant.
    pub beta: f64,
    /// Positive-regret discount exponent for the discounted baseline.
    pub dcfr_alpha: f64,
    /// Negative-regret discount exponent for the discounted baseline.
    pub dcfr_beta: f64,
    /// Test hook: pins the asymmetry of the adaptive variants to a constant.
    pub alpha_override: Option<f64>,
}

impl Variant {
    pub fn new(tag: VariantTag) -> Variant {
        let alpha_max = match tag {
            VariantTag::ApdcfrPlus => 9.0,
            _ => 5.0,
        };
        Variant {
            tag,
            params: Hyperparams {
                alpha_max,
                lambda: 20.0,
                kappa: 500.0,
                beta: 1.5,
                dcfr_alpha: 1.5,
                dcfr_beta: 0.0,
                alpha_override: None,
            },
        }
    }

    /// Parses the CLI spelling, e.g. `pcfr+` or `apcfr+v2`.
    pub fn parse(s: &str) -> Result<Variant, UnknownVariant> {
        VariantTag::ALL
            .iter()
            .find(|t| t.name() == s)
            .map(|&t| Variant::new(t))
            .ok_or_else(|| UnknownVariant(s.to_string()))
    }

    pub fn name(&self) -> &'static str {
        self.tag.name()
    }

    /// Discount weight applied by the discounted predictive variant at
    /// iteration t.
    fn discount(&self, t: u64) -> f64 {
        let tb = (t as f64).powf(self.params.beta);
        self.params.lambda * tb / (self.params.kappa + tb)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown algorithm `{0}` (expected one of cfr, cfr+, dcfr, pcfr+, apcfr+, apcfr+v2, sapcfr+, apdcfr+)")]
pub struct UnknownVariant(pub String);

#[derive(Debug, thiserror::Error)]
#[error("regret vector has length {got}, infoset has {expected} actions")]
pub struct LengthMismatch {
    pub expected: usize,
    pub got: usize,
}

/// Mutable state of one infoset's local minimizer.
#[derive(Debug, Clone)]
pub struct LocalRegretState {
    /// Implicit accumulated regret.
    r: Vec<f64>,
    /// Last observed instantaneous regret (zero before the first observation).
    r_prev: Vec<f64>,
    /// Running sum of squared gaps between consecutive instantaneous regrets.
    sum_pred_gap: f64,
    /// Running sum of squared steps of the implicit accumulator.
    sum_state_gap: f64,
    max_pred_gap: f64,
    max_state_gap: f64,
    t_local: u64,
}

impl LocalRegretState {
    pub fn new(num_actions: usize) -> LocalRegretState {
        LocalRegretState {
            r: vec![0.0; num_actions],
            r_prev: vec![0.0; num_actions],
            sum_pred_gap: 0.0,
            sum_state_gap: 0.0,
            max_pred_gap: 0.0,
            max_state_gap: 0.0,
            t_local: 0,
        }
    }

    pub fn num_actions(&self) -> usize {
        self.r.len()
    }

    pub fn accumulated_regret(&self) -> &[f64] {
        &self.r
    }

    pub fn prev_regret(&self) -> &[f64] {
        &self.r_prev
    }

    pub fn sum_pred_gap(&self) -> f64 {
        self.sum_pred_gap
    }

    pub fn sum_state_gap(&self) -> f64 {
        self.sum_state_gap
    }

    pub fn updates_observed(&self) -> u64 {
        self.t_local
    }

    /// The asymmetry applied to the prediction step at the next update.
    ///
    /// Adaptive variants take the square root of the ratio of the two gap
    /// accumulators (sums, or maxima for the V2 learner), capped at
    /// `alpha_max`. A zero denominator yields 0 when the numerator is also
    /// zero (nothing observed yet) and the cap otherwise. Non-predictive
    /// variants report 0 by convention.
    pub fn compute_alpha(&self, variant: &Variant) -> f64 {
        match variant.tag {
            VariantTag::Cfr | VariantTag::CfrPlus | VariantTag::Dcfr | VariantTag::PcfrPlus => 0.0,
            VariantTag::SapcfrPlus => 2.0,
            VariantTag::ApcfrPlus | VariantTag::ApdcfrPlus => {
                if let Some(a) = variant.params.alpha_override {
                    return a;
                }
                ratio_alpha(self.sum_pred_gap, self.sum_state_gap, variant.params.alpha_max)
            }
            VariantTag::ApcfrPlusV2 => {
                if let Some(a) = variant.params.alpha_override {
                    return a;
                }
                ratio_alpha(self.max_pred_gap, self.max_state_gap, variant.params.alpha_max)
            }
        }
    }

    /// Derives the explicit accumulated regret and normalizes it into a
    /// strategy. An all-zero explicit accumulator yields the uniform strategy.
    pub fn predict_strategy(&self, variant: &Variant, t_global: u64, out: &mut [f64]) {
        assert_eq!(out.len(), self.r.len());
        match variant.tag {
            VariantTag::Cfr | VariantTag::CfrPlus | VariantTag::Dcfr => {
                out.copy_from_slice(&self.r);
            }
            VariantTag::PcfrPlus
            | VariantTag::ApcfrPlus
            | VariantTag::ApcfrPlusV2
            | VariantTag::SapcfrPlus => {
                let step = 1.0 + self.compute_alpha(variant);
                for (o, (&r, &p)) in out.iter_mut().zip(self.r.iter().zip(&self.r_prev)) {
                    *o = (r + p / step).max(0.0);
                }
            }
            VariantTag::ApdcfrPlus => {
                let w = variant.discount(t_global);
                let step = 1.0 + self.compute_alpha(variant);
                for (o, (&r, &p)) in out.iter_mut().zip(self.r.iter().zip(&self.r_prev)) {
                    *o = (w * r + p / step).max(0.0);
                }
            }
        }
        normalize_positive(out);
        debug_assert!(is_simplex(out), "strategy is not a simplex: {out:?}");
    }

    /// Folds one observed instantaneous regret into the state and updates the
    /// gap accumulators. `t_global` is the engine iteration (used by the
    /// discounted rules).
    pub fn observe_regret(
        &mut self,
        r_t: &[f64],
        variant: &Variant,
        t_global: u64,
    ) -> Result<(), LengthMismatch> {
        if r_t.len() != self.r.len() {
            return Err(LengthMismatch {
                expected: self.r.len(),
                got: r_t.len(),
            });
        }
        let mut state_gap = 0.0;
        match variant.tag {
            VariantTag::Cfr => {
                for (r, &x) in self.r.iter_mut().zip(r_t) {
                    let new = *r + x;
                    state_gap += (new - *r) * (new - *r);
                    *r = new;
                }
            }
            VariantTag::Dcfr => {
                let t = t_global as f64;
                let ta = t.powf(variant.params.dcfr_alpha);
                let tb = t.powf(variant.params.dcfr_beta);
                let pos = ta / (ta + 1.0);
                let neg = tb / (tb + 1.0);
                for (r, &x) in self.r.iter_mut().zip(r_t) {
                    let summed = *r + x;
                    let new = if summed > 0.0 { summed * pos } else { summed * neg };
                    state_gap += (new - *r) * (new - *r);
                    *r = new;
                }
            }
            VariantTag::CfrPlus
            | VariantTag::PcfrPlus
            | VariantTag::ApcfrPlus
            | VariantTag::ApcfrPlusV2
            | VariantTag::SapcfrPlus => {
                for (r, &x) in self.r.iter_mut().zip(r_t) {
                    let new = (*r + x).max(0.0);
                    state_gap += (new - *r) * (new - *r);
                    *r = new;
                }
            }
            VariantTag::ApdcfrPlus => {
                let w = variant.discount(t_global);
                for (r, &x) in self.r.iter_mut().zip(r_t) {
                    let new = (*r + w * x).max(0.0);
                    state_gap += (new - *r) * (new - *r);
                    *r = new;
                }
            }
        }
        let pred_gap: f64 = r_t
            .iter()
            .zip(&self.r_prev)
            .map(|(&x, &p)| (x - p) * (x - p))
            .sum();
        self.sum_pred_gap += pred_gap;
        self.sum_state_gap += state_gap;
        self.max_pred_gap = self.max_pred_gap.max(pred_gap);
        self.max_state_gap = self.max_state_gap.max(state_gap);
        self.r_prev.copy_from_slice(r_t);
        self.t_local += 1;
        Ok(())
    }
}

fn ratio_alpha(num: f64, den: f64, alpha_max: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            alpha_max
        }
    } else {
        (num / den).sqrt().min(alpha_max)
    }
}

/// Normalizes the positive part in place; all-nonpositive input becomes
/// uniform.
pub fn normalize_positive(v: &mut [f64]) {
    let mut sum = 0.0;
    for x in v.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
        sum += *x;
    }
    if sum > 0.0 {
        for x in v.iter_mut() {
            *x /= sum;
        }
    } else {
        let u = 1.0 / v.len() as f64;
        v.fill(u);
    }
}

pub fn is_simplex(v: &[f64]) -> bool {
    v.iter().all(|&x| x >= 0.0) && (v.iter().sum::<f64>() - 1.0).abs() <= 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state_with(r: &[f64], r_prev: &[f64]) -> LocalRegretState {
        let mut s = LocalRegretState::new(r.len());
        s.r.copy_from_slice(r);
        s.r_prev.copy_from_slice(r_prev);
        s
    }

    fn predicted(state: &LocalRegretState, v: &Variant, t: u64) -> Vec<f64> {
        let mut out = vec![0.0; state.num_actions()];
        state.predict_strategy(v, t, &mut out);
        out
    }

    #[test]
    fn alpha_ratio_and_clipping() {
        let v = Variant::new(VariantTag::ApcfrPlus);
        let mut s = LocalRegretState::new(2);
        s.sum_pred_gap = 9.0;
        s.sum_state_gap = 1.0;
        assert_eq!(s.compute_alpha(&v), 3.0);
        s.sum_pred_gap = 100.0;
        assert_eq!(s.compute_alpha(&v), 5.0);

        let pcfr = Variant::new(VariantTag::PcfrPlus);
        assert_eq!(s.compute_alpha(&pcfr), 0.0);
        let sapcfr = Variant::new(VariantTag::SapcfrPlus);
        assert_eq!(s.compute_alpha(&sapcfr), 2.0);
    }

    #[test]
    fn alpha_zero_denominator_convention() {
        let v = Variant::new(VariantTag::ApcfrPlus);
        let mut s = LocalRegretState::new(2);
        assert_eq!(s.compute_alpha(&v), 0.0);
        s.sum_pred_gap = 1.0;
        assert_eq!(s.compute_alpha(&v), 5.0);
    }

    #[test]
    fn v2_uses_running_maxima() {
        let v = Variant::new(VariantTag::ApcfrPlusV2);
        let mut s = LocalRegretState::new(2);
        s.max_pred_gap = 16.0;
        s.max_state_gap = 4.0;
        assert_eq!(s.compute_alpha(&v), 2.0);
    }

    #[test]
    fn predict_simple_apcfr_example() {
        let s = state_with(&[2.0, 0.0], &[3.0, -3.0]);
        let v = Variant::new(VariantTag::SapcfrPlus);
        // explicit accumulator [2 + 1, 0 - 1]^+ = [3, 0]
        assert_eq!(predicted(&s, &v, 1), vec![1.0, 0.0]);
    }

    #[test]
    fn predict_zero_state_is_uniform() {
        for tag in VariantTag::ALL {
            let s = LocalRegretState::new(4);
            let v = Variant::new(tag);
            assert_eq!(predicted(&s, &v, 1), vec![0.25; 4], "{tag:?}");
        }
    }

    #[test]
    fn predict_pcfr_and_apcfr_examples() {
        let s = state_with(&[1.0, 1.0], &[1.0, -3.0]);
        let pcfr = Variant::new(VariantTag::PcfrPlus);
        // [1+1, 1-3]^+ = [2, 0]
        assert_eq!(predicted(&s, &pcfr, 1), vec![1.0, 0.0]);

        let mut apcfr = Variant::new(VariantTag::ApcfrPlus);
        apcfr.params.alpha_override = Some(1.0);
        // [1 + 0.5, 1 - 1.5]^+ = [1.5, 0]: same argmax, different magnitude
        assert_eq!(predicted(&s, &apcfr, 1), vec![1.0, 0.0]);
    }

    #[test]
    fn observe_floors_and_satisfies_step_bound() {
        let mut s = state_with(&[1.0, 2.0], &[0.0, 0.0]);
        let v = Variant::new(VariantTag::CfrPlus);
        let r_t = [-3.0, 1.0];
        s.observe_regret(&r_t, &v, 1).unwrap();
        assert_eq!(s.accumulated_regret(), &[0.0, 3.0]);
        // squared step 1 + 1 = 2 is below the squared regret norm 10
        assert_eq!(s.sum_state_gap(), 2.0);
        let r_norm: f64 = r_t.iter().map(|x| x * x).sum();
        assert!(s.sum_state_gap() <= r_norm + 1e-9);
    }

    #[test]
    fn observe_vanilla_keeps_negative_sums() {
        let mut s = state_with(&[1.0, 2.0], &[0.0, 0.0]);
        let v = Variant::new(VariantTag::Cfr);
        s.observe_regret(&[-3.0, 1.0], &v, 1).unwrap();
        assert_eq!(s.accumulated_regret(), &[-2.0, 3.0]);
    }

    #[test]
    fn observe_discounted_predictive_first_step() {
        let mut s = LocalRegretState::new(2);
        let v = Variant::new(VariantTag::ApdcfrPlus);
        s.observe_regret(&[1.0, -1.0], &v, 1).unwrap();
        // discount at t=1 is 20/501
        assert!((s.accumulated_regret()[0] - 20.0 / 501.0).abs() < 1e-15);
        assert_eq!(s.accumulated_regret()[1], 0.0);
    }

    #[test]
    fn observe_rejects_length_mismatch() {
        let mut s = LocalRegretState::new(2);
        let v = Variant::new(VariantTag::Cfr);
        assert!(s.observe_regret(&[1.0], &v, 1).is_err());
    }

    /// Deterministic xorshift for synthetic regret streams.
    struct Rng(u64);
    impl Rng {
        fn next_f64(&mut self) -> f64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            (self.0 >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        }
    }

    #[test]
    fn plus_family_invariants_on_synthetic_streams() {
        for tag in VariantTag::ALL {
            let v = Variant::new(tag);
            let mut s = LocalRegretState::new(3);
            let mut rng = Rng(0x9e3779b97f4a7c15);
            for t in 1..=500u64 {
                let r_t: Vec<f64> = (0..3).map(|_| rng.next_f64()).collect();
                let before = s.accumulated_regret().to_vec();
                let alpha = s.compute_alpha(&v);
                assert!((0.0..=v.params.alpha_max).contains(&alpha), "{tag:?}: alpha {alpha}");
                let sigma = predicted(&s, &v, t);
                assert!(is_simplex(&sigma), "{tag:?}: {sigma:?}");
                s.observe_regret(&r_t, &v, t).unwrap();
                if tag.is_plus_family() {
                    assert!(s.accumulated_regret().iter().all(|&x| x >= 0.0), "{tag:?}");
                    // squared accumulator step never exceeds the squared
                    // observed regret (the flooring is a contraction)
                    let step: f64 = s
                        .accumulated_regret()
                        .iter()
                        .zip(&before)
                        .map(|(&a, &b)| (a - b) * (a - b))
                        .sum();
                    let mut scaled = r_t.clone();
                    if tag == VariantTag::ApdcfrPlus {
                        let w = v.discount(t);
                        for x in &mut scaled {
                            *x *= w;
                        }
                    }
                    let bound: f64 = scaled.iter().map(|x| x * x).sum();
                    assert!(step <= bound + 1e-9, "{tag:?}: step {step} > {bound}");
                }
            }
        }
    }

    #[test]
    fn forced_alpha_reproduces_fixed_variants_bit_exactly() {
        let pcfr = Variant::new(VariantTag::PcfrPlus);
        let sapcfr = Variant::new(VariantTag::SapcfrPlus);
        let mut forced0 = Variant::new(VariantTag::ApcfrPlus);
        forced0.params.alpha_override = Some(0.0);
        let mut forced2 = Variant::new(VariantTag::ApcfrPlus);
        forced2.params.alpha_override = Some(2.0);

        let mut states: Vec<LocalRegretState> = (0..4).map(|_| LocalRegretState::new(3)).collect();
        let mut rng = Rng(42);
        for t in 1..=300u64 {
            let r_t: Vec<f64> = (0..3).map(|_| rng.next_f64()).collect();
            let outs: Vec<Vec<f64>> = [&pcfr, &forced0, &sapcfr, &forced2]
                .iter()
                .zip(&states)
                .map(|(v, s)| predicted(s, v, t))
                .collect();
            assert_eq!(outs[0], outs[1], "t={t}: forced alpha=0 diverged");
            assert_eq!(outs[2], outs[3], "t={t}: forced alpha=2 diverged");
            for (v, s) in [&pcfr, &forced0, &sapcfr, &forced2].iter().zip(&mut states) {
                s.observe_regret(&r_t, v, t).unwrap();
            }
        }
    }

    #[test]
    fn fixed_asymmetry_minimizes_worst_case_tradeoff() {
        // f(a) = 4E/a + aE over a > 0 has its minimum exactly at a = 2.
        for e in [0.5, 1.0, 3.0] {
            let f = |a: f64| 4.0 * e / a + a * e;
            let best = f(2.0);
            let mut a: f64 = 0.05;
            while a < 40.0 {
                if (a - 2.0).abs() > 1e-9 {
                    assert!(f(a) > best, "f({a}) = {} not above f(2) = {best}", f(a));
                }
                a += 0.05;
            }
        }
    }
}
