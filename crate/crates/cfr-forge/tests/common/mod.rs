//! Shared test support: deterministic pseudo-random profiles and brute-force
//! oracles built on exhaustive path enumeration, fully independent of the
//! library's recursive evaluators.

use cfr_forge::efg::{GameTree, InfosetId, NodeId, NodeKind, PlayerId};
use cfr_forge::engine::StrategyProfile;

/// Deterministic xorshift generator for reproducible "arbitrary" inputs.
pub struct Rng(pub u64);

impl Rng {
    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// A random interior strategy profile (every action probability positive).
pub fn random_profile(tree: &GameTree, rng: &mut Rng) -> StrategyProfile {
    let mut profile = StrategyProfile::uniform(tree);
    for id in tree.infoset_ids() {
        let slot = profile.get_mut(id);
        let mut sum = 0.0;
        for x in slot.iter_mut() {
            *x = rng.unit() + 1e-3;
            sum += *x;
        }
        for x in slot.iter_mut() {
            *x /= sum;
        }
    }
    profile
}

/// One edge along a root-to-terminal path.
#[derive(Clone, Copy)]
pub struct PathEdge {
    pub owner: PlayerId,
    pub prob: f64,
    pub infoset: Option<InfosetId>,
    pub action: usize,
}

/// All root-to-terminal paths with their edge annotations and the terminal's
/// player-0 payoff.
pub fn enumerate_paths(tree: &GameTree, profile: &StrategyProfile) -> Vec<(Vec<PathEdge>, f64)> {
    let mut out = Vec::new();
    let mut edges = Vec::new();
    fn go(
        tree: &GameTree,
        profile: &StrategyProfile,
        node: NodeId,
        edges: &mut Vec<PathEdge>,
        out: &mut Vec<(Vec<PathEdge>, f64)>,
    ) {
        match tree.node(node) {
            NodeKind::Terminal { payoff0 } => out.push((edges.clone(), payoff0)),
            NodeKind::Chance { probs, children } => {
                for (a, (&p, &c)) in probs.iter().zip(children).enumerate() {
                    edges.push(PathEdge {
                        owner: PlayerId::Chance,
                        prob: p,
                        infoset: None,
                        action: a,
                    });
                    go(tree, profile, c, edges, out);
                    edges.pop();
                }
            }
            NodeKind::Decision { player, infoset, children } => {
                let sigma = profile.get(infoset);
                for (a, &c) in children.iter().enumerate() {
                    edges.push(PathEdge {
                        owner: player,
                        prob: sigma[a],
                        infoset: Some(infoset),
                        action: a,
                    });
                    go(tree, profile, c, edges, out);
                    edges.pop();
                }
            }
        }
    }
    go(tree, profile, tree.root(), &mut edges, &mut out);
    out
}

/// Expected payoff for player 0 by summing over all terminal paths.
pub fn brute_force_expected_value(tree: &GameTree, profile: &StrategyProfile) -> f64 {
    enumerate_paths(tree, profile)
        .iter()
        .map(|(edges, u0)| edges.iter().map(|e| e.prob).product::<f64>() * u0)
        .sum()
}

/// Counterfactual values by direct summation of the defining formula over all
/// terminal paths: for each (infoset, action) on a path, accumulate
/// (opponent-and-chance reach up to the node) x (full reach after the action)
/// x payoff.
pub fn brute_force_counterfactual_values(
    tree: &GameTree,
    profile: &StrategyProfile,
    player: PlayerId,
) -> Vec<f64> {
    let mut cfv = vec![0.0; tree.num_action_slots()];
    let offsets = tree.strategy_offsets();
    for (edges, u0) in enumerate_paths(tree, profile) {
        let u = if player == PlayerId::Player0 { u0 } else { -u0 };
        for (j, edge) in edges.iter().enumerate() {
            if edge.owner != player {
                continue;
            }
            let pi_opp: f64 = edges[..j]
                .iter()
                .filter(|e| e.owner != player)
                .map(|e| e.prob)
                .product();
            let pi_after: f64 = edges[j + 1..].iter().map(|e| e.prob).product();
            let infoset = edge.infoset.expect("player edges carry an infoset");
            cfv[offsets[infoset.idx()] as usize + edge.action] += pi_opp * pi_after * u;
        }
    }
    cfv
}

/// Exact best response by enumerating every pure strategy of `player`
/// (feasible only for tiny games).
pub fn brute_force_best_response(tree: &GameTree, profile: &StrategyProfile, player: PlayerId) -> f64 {
    let infosets: Vec<InfosetId> = tree.player_infosets(player).to_vec();
    let mut counts = Vec::with_capacity(infosets.len());
    let mut total: u64 = 1;
    for &id in &infosets {
        let n = tree.infoset(id).num_actions as u64;
        counts.push(n);
        total = total.checked_mul(n).expect("pure strategy space too large");
    }
    assert!(total <= 1 << 20, "pure strategy space too large: {total}");
    let mut best = f64::NEG_INFINITY;
    for mut code in 0..total {
        let mut pure = profile.clone();
        for (k, &id) in infosets.iter().enumerate() {
            let pick = (code % counts[k]) as usize;
            code /= counts[k];
            let slot = pure.get_mut(id);
            slot.fill(0.0);
            slot[pick] = 1.0;
        }
        let ev = brute_force_expected_value(tree, &pure);
        let ev = if player == PlayerId::Player0 { ev } else { -ev };
        best = best.max(ev);
    }
    best
}

/// Exploitability from the pure-strategy enumeration oracle.
pub fn brute_force_exploitability(tree: &GameTree, profile: &StrategyProfile) -> f64 {
    (brute_force_best_response(tree, profile, PlayerId::Player0)
        + brute_force_best_response(tree, profile, PlayerId::Player1))
        / 2.0
}
