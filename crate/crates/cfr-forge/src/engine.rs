//! The solve loop: tree walks producing counterfactual values, per-infoset
//! regret updates under alternating or simultaneous schemes, and weighted
//! average-strategy accumulation.

use std::sync::Arc;
use std::time::Instant;

use crate::diagnostics::{aggregate, DiagnosticTotals, InfosetDiagnostics};
use crate::efg::{GameTree, InfosetId, NodeId, NodeKind, PlayerId};
use crate::exploitability::exploitability;
use crate::games::{GameError, GameSpec};
use crate::regret::{LocalRegretState, Variant};

/// Behavioral strategies for both players: one simplex vector per infoset,
/// stored flat using the tree's offset table.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    offsets: Arc<Vec<u32>>,
    values: Vec<f64>,
}

impl StrategyProfile {
    pub fn uniform(tree: &GameTree) -> StrategyProfile {
        let offsets = tree.strategy_offsets().clone();
        let mut values = vec![0.0; tree.num_action_slots()];
        for id in tree.infoset_ids() {
            let n = tree.infoset(id).num_actions as usize;
            let lo = offsets[id.idx()] as usize;
            values[lo..lo + n].fill(1.0 / n as f64);
        }
        StrategyProfile { offsets, values }
    }

    pub fn num_infosets(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn get(&self, id: InfosetId) -> &[f64] {
        let lo = self.offsets[id.idx()] as usize;
        let hi = self.offsets[id.idx() + 1] as usize;
        &self.values[lo..hi]
    }

    pub fn get_mut(&mut self, id: InfosetId) -> &mut [f64] {
        let lo = self.offsets[id.idx()] as usize;
        let hi = self.offsets[id.idx() + 1] as usize;
        &mut self.values[lo..hi]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Weight schedule for the average strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Averaging {
    /// Every iterate weighted by its own reach.
    Linear,
    /// Iterate t additionally weighted by t^2.
    Quadratic,
    /// Exponential-style decay `((t-1)/t)^2.5` of the running accumulator,
    /// reach-weighted.
    ApdWeighted,
    /// Same decay without the reach factor.
    ApdUnweighted,
}

impl Averaging {
    pub fn parse(s: &str) -> Option<Averaging> {
        match s {
            "linear" => Some(Averaging::Linear),
            "quadratic" => Some(Averaging::Quadratic),
            "apd" => Some(Averaging::ApdWeighted),
            "apd_raw" => Some(Averaging::ApdUnweighted),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Averaging::Linear => "linear",
            Averaging::Quadratic => "quadratic",
            Averaging::ApdWeighted => "apd",
            Averaging::ApdUnweighted => "apd_raw",
        }
    }
}

/// Weighted accumulators from which the average strategy is extracted.
#[derive(Debug, Clone)]
pub struct AverageStrategy {
    scheme: Averaging,
    offsets: Arc<Vec<u32>>,
    acc: Vec<f64>,
    weight_sum: Vec<f64>,
}

impl AverageStrategy {
    pub fn new(tree: &GameTree, scheme: Averaging) -> AverageStrategy {
        AverageStrategy {
            scheme,
            offsets: tree.strategy_offsets().clone(),
            acc: vec![0.0; tree.num_action_slots()],
            weight_sum: vec![0.0; tree.strategy_offsets().len() - 1],
        }
    }

    pub fn scheme(&self) -> Averaging {
        self.scheme
    }

    /// Folds the iterate at `infoset` into the accumulator. `reach` is the
    /// owner's own reach probability and `t` the global iteration (>= 1).
    pub fn accumulate(&mut self, infoset: InfosetId, sigma: &[f64], reach: f64, t: u64) {
        let lo = self.offsets[infoset.idx()] as usize;
        let slot = &mut self.acc[lo..lo + sigma.len()];
        match self.scheme {
            Averaging::Linear => {
                for (a, &s) in slot.iter_mut().zip(sigma) {
                    *a += reach * s;
                }
                self.weight_sum[infoset.idx()] += reach;
            }
            Averaging::Quadratic => {
                let w = (t * t) as f64 * reach;
                for (a, &s) in slot.iter_mut().zip(sigma) {
                    *a += w * s;
                }
                self.weight_sum[infoset.idx()] += w;
            }
            Averaging::ApdWeighted | Averaging::ApdUnweighted => {
                let decay = (((t - 1) as f64) / t as f64).powf(2.5);
                let w = if self.scheme == Averaging::ApdWeighted { reach } else { 1.0 };
                for (a, &s) in slot.iter_mut().zip(sigma) {
                    *a = decay * *a + w * s;
                }
                let ws = &mut self.weight_sum[infoset.idx()];
                *ws = decay * *ws + w;
            }
        }
    }

    /// Normalizes every accumulator into a profile; untouched (all-zero)
    /// infosets come out uniform.
    pub fn extract(&self) -> StrategyProfile {
        let mut values = self.acc.clone();
        for i in 0..self.weight_sum.len() {
            let lo = self.offsets[i] as usize;
            let hi = self.offsets[i + 1] as usize;
            crate::regret::normalize_positive(&mut values[lo..hi]);
        }
        StrategyProfile {
            offsets: self.offsets.clone(),
            values,
        }
    }
}

/// Update scheme within one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    /// Player 0 updates first, then player 1 answers the fresh strategy.
    Alternating,
    /// Both players update against the same prior profile.
    Simultaneous,
}

impl UpdateMode {
    pub fn parse(s: &str) -> Option<UpdateMode> {
        match s {
            "alternating" => Some(UpdateMode::Alternating),
            "simultaneous" => Some(UpdateMode::Simultaneous),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            UpdateMode::Alternating => "alternating",
            UpdateMode::Simultaneous => "simultaneous",
        }
    }
}

/// Which iterations produce a convergence record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogSchedule {
    /// 1..9, 10, 20, ..., 90, 100, 200, ... plus the final iteration.
    Log10,
    /// Powers of two plus the final iteration.
    Pow2,
    /// Every n-th iteration plus the final one.
    Every(u64),
    /// Only the final iteration.
    Final,
}

impl LogSchedule {
    pub fn should_log(&self, t: u64, total: u64) -> bool {
        if t == total {
            return true;
        }
        match *self {
            LogSchedule::Log10 => {
                let mut scale = 1;
                while scale * 10 <= t {
                    scale *= 10;
                }
                t.is_multiple_of(scale)
            }
            LogSchedule::Pow2 => t.is_power_of_two(),
            LogSchedule::Every(n) => n > 0 && t.is_multiple_of(n),
            LogSchedule::Final => false,
        }
    }

    pub fn parse(s: &str) -> Option<LogSchedule> {
        match s {
            "log" | "log10" => Some(LogSchedule::Log10),
            "pow2" => Some(LogSchedule::Pow2),
            "final" => Some(LogSchedule::Final),
            _ => s.strip_prefix("every:")?.parse().ok().map(LogSchedule::Every),
        }
    }
}

/// Full description of one solver run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub game: GameSpec,
    pub variant: Variant,
    pub iterations: u64,
    pub update_mode: UpdateMode,
    pub averaging: Averaging,
    pub log_schedule: LogSchedule,
    pub diagnostics: bool,
}

/// Per-update observer: receives each updated infoset with its
/// counterfactual values and the strategy that produced them.
pub type StepObserver<'o> = dyn FnMut(InfosetId, &[f64], &[f64]) + 'o;

/// One logged row of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub iteration: u64,
    /// Exploitability of the extracted average, in normalized payoff units.
    pub exploitability: f64,
    pub total_pred_gap: f64,
    pub total_state_gap: f64,
    pub bound_thm1: f64,
    pub bound_thm2: f64,
    pub mean_alpha: f64,
    pub max_alpha: f64,
    pub wall_time_s: f64,
}

/// Mutable solver state for one run. The tree is borrowed immutably so many
/// solvers can share it.
pub struct Solver<'a> {
    tree: &'a GameTree,
    variant: Variant,
    mode: UpdateMode,
    states: Vec<LocalRegretState>,
    diags: Option<Vec<InfosetDiagnostics>>,
    avg: AverageStrategy,
    profile: StrategyProfile,
    t: u64,
    // scratch, reused across iterations
    cfv: Vec<f64>,
    reach: Vec<f64>,
    regret_buf: Vec<f64>,
    r_old_buf: Vec<f64>,
    r_prev_buf: Vec<f64>,
}

impl<'a> Solver<'a> {
    pub fn new(
        tree: &'a GameTree,
        variant: Variant,
        mode: UpdateMode,
        averaging: Averaging,
        diagnostics: bool,
    ) -> Solver<'a> {
        let states = tree
            .infoset_ids()
            .map(|id| LocalRegretState::new(tree.infoset(id).num_actions as usize))
            .collect();
        let diags = diagnostics.then(|| {
            tree.infoset_ids()
                .map(|id| InfosetDiagnostics::new(tree.infoset(id).num_actions as usize))
                .collect()
        });
        let max_actions = tree
            .infoset_ids()
            .map(|id| tree.infoset(id).num_actions as usize)
            .max()
            .unwrap_or(0);
        Solver {
            tree,
            variant,
            mode,
            states,
            diags,
            avg: AverageStrategy::new(tree, averaging),
            profile: StrategyProfile::uniform(tree),
            t: 0,
            cfv: vec![0.0; tree.num_action_slots()],
            reach: vec![0.0; tree.num_infosets()],
            regret_buf: vec![0.0; max_actions],
            r_old_buf: vec![0.0; max_actions],
            r_prev_buf: vec![0.0; max_actions],
        }
    }

    pub fn tree(&self) -> &GameTree {
        self.tree
    }

    pub fn iteration(&self) -> u64 {
        self.t
    }

    pub fn states(&self) -> &[LocalRegretState] {
        &self.states
    }

    pub fn diagnostics(&self) -> Option<&[InfosetDiagnostics]> {
        self.diags.as_deref()
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    /// The latest predicted strategies. Under alternating updates these are
    /// the refreshed strategies the next iteration will play.
    pub fn current_profile(&self) -> &StrategyProfile {
        &self.profile
    }

    /// Extracts the running weighted average.
    pub fn average(&self) -> StrategyProfile {
        self.avg.extract()
    }

    /// Runs one global iteration.
    pub fn iterate(&mut self) {
        self.iterate_observed(&mut |_, _, _| {});
    }

    /// Runs one global iteration, reporting `(infoset, values, strategy)` for
    /// every updated infoset to the observer.
    ///
    /// Under alternating updates a player's strategy is refreshed from its
    /// state immediately after the observation, so the other player (and the
    /// next iteration) always responds to the freshest strategy. Under
    /// simultaneous updates both players predict from the prior state first
    /// and then observe against the same profile.
    pub fn iterate_observed(&mut self, observer: &mut StepObserver<'_>) {
        self.t += 1;
        match self.mode {
            UpdateMode::Alternating => {
                for p in [PlayerId::Player0, PlayerId::Player1] {
                    self.values_pass(p);
                    self.update_player(p, true, observer);
                }
            }
            UpdateMode::Simultaneous => {
                for p in [PlayerId::Player0, PlayerId::Player1] {
                    self.predict_player(p);
                }
                for p in [PlayerId::Player0, PlayerId::Player1] {
                    self.values_pass(p);
                    self.update_player(p, false, observer);
                }
            }
        }
    }

    /// Writes the strategy for iteration `self.t` into the profile.
    fn predict_player(&mut self, player: PlayerId) {
        for &id in self.tree.player_infosets(player) {
            let lo = self.tree.strategy_offsets()[id.idx()] as usize;
            let n = self.tree.infoset(id).num_actions as usize;
            let slot = &mut self.profile.values[lo..lo + n];
            self.states[id.idx()].predict_strategy(&self.variant, self.t, slot);
        }
    }

    /// One tree walk filling `cfv` (counterfactual values for `player`'s
    /// infosets) and `reach` (the player's own reach per infoset).
    fn values_pass(&mut self, player: PlayerId) {
        for &id in self.tree.player_infosets(player) {
            let lo = self.tree.strategy_offsets()[id.idx()] as usize;
            let hi = self.tree.strategy_offsets()[id.idx() + 1] as usize;
            self.cfv[lo..hi].fill(0.0);
            self.reach[id.idx()] = 0.0;
        }
        walk(
            self.tree,
            &self.profile,
            player,
            self.tree.root(),
            1.0,
            1.0,
            &mut self.cfv,
            &mut self.reach,
        );
    }

    /// Observes this iteration's regrets for `player`'s infosets and folds
    /// the played strategy into the average. With `refresh` the strategy for
    /// the next iteration is written back immediately.
    fn update_player(
        &mut self,
        player: PlayerId,
        refresh: bool,
        observer: &mut StepObserver<'_>,
    ) {
        for &id in self.tree.player_infosets(player) {
            let lo = self.tree.strategy_offsets()[id.idx()] as usize;
            let hi = self.tree.strategy_offsets()[id.idx() + 1] as usize;
            let n = hi - lo;
            let sigma = &self.profile.values[lo..hi];
            let v = &self.cfv[lo..hi];
            observer(id, v, sigma);
            let r_t = instantaneous_regret_into(v, sigma, &mut self.regret_buf[..n]);
            self.avg.accumulate(id, sigma, self.reach[id.idx()], self.t);

            let state = &mut self.states[id.idx()];
            if let Some(diags) = &mut self.diags {
                // the asymmetry that produced the strategy just played
                let alpha = state.compute_alpha(&self.variant);
                self.r_old_buf[..n].copy_from_slice(state.accumulated_regret());
                self.r_prev_buf[..n].copy_from_slice(state.prev_regret());
                state
                    .observe_regret(r_t, &self.variant, self.t)
                    .expect("regret length fixed by construction");
                diags[id.idx()].record_step(
                    r_t,
                    &self.r_prev_buf[..n],
                    state.accumulated_regret(),
                    &self.r_old_buf[..n],
                    alpha,
                );
            } else {
                state
                    .observe_regret(r_t, &self.variant, self.t)
                    .expect("regret length fixed by construction");
            }
            if refresh {
                let slot = &mut self.profile.values[lo..hi];
                self.states[id.idx()].predict_strategy(&self.variant, self.t + 1, slot);
            }
        }
    }

    /// Aggregated diagnostic totals and asymmetry statistics at the current
    /// iteration.
    pub fn totals(&self) -> DiagnosticTotals {
        aggregate(self.diags.as_deref(), &self.states, &self.variant)
    }

    /// Builds a convergence record for the current iteration: exploitability
    /// of the extracted average plus the diagnostic totals.
    pub fn record(&self, wall_time_s: f64) -> ConvergenceRecord {
        let avg = self.average();
        let eps = exploitability(self.tree, &avg);
        let totals = self.totals();
        ConvergenceRecord {
            iteration: self.t,
            exploitability: eps,
            total_pred_gap: totals.total_pred_gap,
            total_state_gap: totals.total_state_gap,
            bound_thm1: totals.total_bound1,
            bound_thm2: totals.total_bound2,
            mean_alpha: totals.mean_alpha,
            max_alpha: totals.max_alpha,
            wall_time_s,
        }
    }
}

/// Counterfactual values `v(I, a)` for every infoset of `player` under
/// `profile`, flattened by the tree's offset table, together with the
/// player's own reach probability per infoset.
pub fn counterfactual_values(
    tree: &GameTree,
    profile: &StrategyProfile,
    player: PlayerId,
) -> (Vec<f64>, Vec<f64>) {
    let mut cfv = vec![0.0; tree.num_action_slots()];
    let mut reach = vec![0.0; tree.num_infosets()];
    walk(tree, profile, player, tree.root(), 1.0, 1.0, &mut cfv, &mut reach);
    (cfv, reach)
}

/// `r = v - <v, sigma> 1`: the instantaneous counterfactual regret of the
/// strategy actually played.
pub fn instantaneous_regret(v: &[f64], sigma: &[f64]) -> Vec<f64> {
    assert_eq!(v.len(), sigma.len(), "value/strategy length mismatch");
    let mut out = vec![0.0; v.len()];
    instantaneous_regret_into(v, sigma, &mut out);
    out
}

fn instantaneous_regret_into<'b>(v: &[f64], sigma: &[f64], out: &'b mut [f64]) -> &'b [f64] {
    let ev: f64 = v.iter().zip(sigma).map(|(&a, &b)| a * b).sum();
    for (o, &x) in out.iter_mut().zip(v) {
        *o = x - ev;
    }
    out
}

/// Expected utilities bottom-up, opponent-and-chance reach top-down. For the
/// updating player's decision nodes the weighted child values accumulate into
/// that infoset's counterfactual value vector.
#[allow(clippy::too_many_arguments)]
fn walk(
    tree: &GameTree,
    profile: &StrategyProfile,
    player: PlayerId,
    node: NodeId,
    pi_own: f64,
    pi_other: f64,
    cfv: &mut [f64],
    reach: &mut [f64],
) -> f64 {
    if pi_own == 0.0 && pi_other == 0.0 {
        return 0.0;
    }
    match tree.node(node) {
        NodeKind::Terminal { payoff0 } => {
            if player == PlayerId::Player0 {
                payoff0
            } else {
                -payoff0
            }
        }
        NodeKind::Chance { probs, children } => {
            let mut ev = 0.0;
            for (&p, &c) in probs.iter().zip(children) {
                ev += p * walk(tree, profile, player, c, pi_own, pi_other * p, cfv, reach);
            }
            ev
        }
        NodeKind::Decision { player: owner, infoset, children } => {
            let sigma = profile.get(infoset);
            if owner == player {
                reach[infoset.idx()] = pi_own;
                let lo = tree.strategy_offsets()[infoset.idx()] as usize;
                let mut ev = 0.0;
                for (a, &c) in children.iter().enumerate() {
                    let v = walk(tree, profile, player, c, pi_own * sigma[a], pi_other, cfv, reach);
                    cfv[lo + a] += pi_other * v;
                    ev += sigma[a] * v;
                }
                ev
            } else {
                let mut ev = 0.0;
                for (a, &c) in children.iter().enumerate() {
                    if sigma[a] == 0.0 && pi_own == 0.0 {
                        continue;
                    }
                    ev += sigma[a]
                        * walk(tree, profile, player, c, pi_own, pi_other * sigma[a], cfv, reach);
                }
                ev
            }
        }
    }
}

/// Final per-infoset accumulator values, for diagnostic dumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfosetSummary {
    pub infoset: InfosetId,
    pub player: PlayerId,
    pub num_actions: u16,
    pub realized_regret: f64,
    pub bound1_sum: f64,
    pub bound2_sum: f64,
    pub alpha: f64,
    pub sum_pred_gap: f64,
    pub sum_state_gap: f64,
}

/// Output of [`run`]: the final average profile plus every logged record.
pub struct RunOutput {
    pub average: StrategyProfile,
    pub records: Vec<ConvergenceRecord>,
    /// Raw-unit factor of the game's payoffs.
    pub payoff_scale: f64,
    /// Per-infoset accumulators at the final iteration; present when the run
    /// had diagnostics enabled.
    pub infoset_summaries: Option<Vec<InfosetSummary>>,
}

/// Builds the game and executes the configured number of iterations, emitting
/// a record at every logged iteration.
pub fn run(config: &RunConfig, sink: &mut dyn FnMut(&ConvergenceRecord)) -> Result<RunOutput, GameError> {
    let tree = config.game.build()?;
    let output = run_on(&tree, config, sink);
    Ok(output)
}

/// Like [`run`], but on a pre-built tree (shared across runs).
pub fn run_on(tree: &GameTree, config: &RunConfig, sink: &mut dyn FnMut(&ConvergenceRecord)) -> RunOutput {
    let mut solver = Solver::new(
        tree,
        config.variant,
        config.update_mode,
        config.averaging,
        config.diagnostics,
    );
    let start = Instant::now();
    let mut records = Vec::new();
    for t in 1..=config.iterations {
        solver.iterate();
        if config.log_schedule.should_log(t, config.iterations) {
            let rec = solver.record(start.elapsed().as_secs_f64());
            sink(&rec);
            records.push(rec);
        }
    }
    let infoset_summaries = solver.diagnostics().map(|diags| {
        tree.infoset_ids()
            .map(|id| {
                let d = &diags[id.idx()];
                let state = &solver.states()[id.idx()];
                InfosetSummary {
                    infoset: id,
                    player: tree.infoset(id).player,
                    num_actions: tree.infoset(id).num_actions,
                    realized_regret: d.realized_regret(),
                    bound1_sum: d.bound1_sum(),
                    bound2_sum: d.bound2_sum(),
                    alpha: state.compute_alpha(&config.variant),
                    sum_pred_gap: state.sum_pred_gap(),
                    sum_state_gap: state.sum_state_gap(),
                }
            })
            .collect()
    });
    RunOutput {
        average: solver.average(),
        records,
        payoff_scale: tree.payoff_scale(),
        infoset_summaries,
    }
}
