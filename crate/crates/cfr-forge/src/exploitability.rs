//! Exact best response and exploitability.
//!
//! The best response is computed infoset-exactly: a top-down pass accumulates
//! the opponent-and-chance reach of every node, then responder infosets are
//! resolved deepest-first, each choosing the action that maximizes the
//! reach-weighted sum of member values. Perfect recall makes this greedy
//! resolution exact.

use crate::efg::{GameTree, NodeId, NodeKind, PlayerId};
use crate::engine::StrategyProfile;

/// The value a player can secure against the profile's other side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponseValue {
    pub player: PlayerId,
    /// max over the player's strategies of their expected payoff, in
    /// normalized units.
    pub value: f64,
}

/// Expected payoff of player 0 when both sides follow `profile`.
pub fn expected_value(tree: &GameTree, profile: &StrategyProfile) -> f64 {
    fn eval(tree: &GameTree, profile: &StrategyProfile, node: NodeId) -> f64 {
        match tree.node(node) {
            NodeKind::Terminal { payoff0 } => payoff0,
            NodeKind::Chance { probs, children } => probs
                .iter()
                .zip(children)
                .map(|(&p, &c)| p * eval(tree, profile, c))
                .sum(),
            NodeKind::Decision { infoset, children, .. } => {
                let sigma = profile.get(infoset);
                sigma
                    .iter()
                    .zip(children)
                    .filter(|(&s, _)| s != 0.0)
                    .map(|(&s, &c)| s * eval(tree, profile, c))
                    .sum()
            }
        }
    }
    eval(tree, profile, tree.root())
}

/// Exact best-response value for `player` against the opponent entries of
/// `profile` (the responder's own entries are ignored).
pub fn best_response_value(tree: &GameTree, profile: &StrategyProfile, player: PlayerId) -> BestResponseValue {
    let n = tree.num_nodes();
    debug_assert_eq!(tree.root().idx(), n - 1, "builder guarantees the root is last");

    // Opponent-and-chance reach, top-down (descending ids reach parents first).
    let mut reach = vec![0.0f64; n];
    reach[tree.root().idx()] = 1.0;
    for id in (0..n).rev() {
        let r = reach[id];
        if r == 0.0 {
            continue;
        }
        match tree.node(NodeId(id as u32)) {
            NodeKind::Terminal { .. } => {}
            NodeKind::Chance { probs, children } => {
                for (&p, &c) in probs.iter().zip(children) {
                    reach[c.idx()] += r * p;
                }
            }
            NodeKind::Decision { player: owner, infoset, children } => {
                if owner == player {
                    for &c in children {
                        reach[c.idx()] += r;
                    }
                } else {
                    let sigma = profile.get(infoset);
                    for (&s, &c) in sigma.iter().zip(children) {
                        reach[c.idx()] += r * s;
                    }
                }
            }
        }
    }

    // Node values under the best response, resolved lazily. Responder
    // decisions wait until their infoset has picked an action.
    let mut value = vec![f64::NAN; n];
    let mut best_action: Vec<u16> = vec![u16::MAX; tree.num_infosets()];

    fn node_value(
        tree: &GameTree,
        profile: &StrategyProfile,
        player: PlayerId,
        best_action: &[u16],
        value: &mut [f64],
        node: NodeId,
    ) -> f64 {
        let cached = value[node.idx()];
        if !cached.is_nan() {
            return cached;
        }
        let v = match tree.node(node) {
            NodeKind::Terminal { payoff0 } => {
                if player == PlayerId::Player0 {
                    payoff0
                } else {
                    -payoff0
                }
            }
            NodeKind::Chance { probs, children } => probs
                .iter()
                .zip(children)
                .map(|(&p, &c)| p * node_value(tree, profile, player, best_action, value, c))
                .sum(),
            NodeKind::Decision { player: owner, infoset, children } => {
                if owner == player {
                    let a = best_action[infoset.idx()];
                    assert_ne!(a, u16::MAX, "infoset resolved out of order");
                    node_value(tree, profile, player, best_action, value, children[a as usize])
                } else {
                    let sigma = profile.get(infoset);
                    sigma
                        .iter()
                        .zip(children)
                        .map(|(&s, &c)| {
                            if s == 0.0 {
                                0.0
                            } else {
                                s * node_value(tree, profile, player, best_action, value, c)
                            }
                        })
                        .sum()
                }
            }
        };
        value[node.idx()] = v;
        v
    }

    // Deeper infosets have strictly smaller max member ids (members are
    // created before any ancestor's later members under perfect recall), so
    // ascending max-member-id order resolves dependencies first.
    let mut order: Vec<_> = tree
        .player_infosets(player)
        .iter()
        .map(|&id| {
            let max_member = tree.members(id).iter().max().copied().unwrap_or(NodeId(0));
            (max_member, id)
        })
        .collect();
    order.sort();

    for &(_, id) in &order {
        let infoset = tree.infoset(id);
        let mut best = (0u16, f64::NEG_INFINITY);
        for a in 0..infoset.num_actions {
            let mut score = 0.0;
            for &m in tree.members(id) {
                let child = tree.children_of(m)[a as usize];
                if reach[m.idx()] != 0.0 {
                    score += reach[m.idx()]
                        * node_value(tree, profile, player, &best_action, &mut value, child);
                }
            }
            if score > best.1 {
                best = (a, score);
            }
        }
        best_action[id.idx()] = best.0;
    }

    let value = node_value(tree, profile, player, &best_action, &mut value, tree.root());
    BestResponseValue { player, value }
}

/// Average best-response gain over both players. Zero exactly at equilibrium;
/// tiny negative values from roundoff are floored to zero.
pub fn exploitability(tree: &GameTree, profile: &StrategyProfile) -> f64 {
    let br0 = best_response_value(tree, profile, PlayerId::Player0).value;
    let br1 = best_response_value(tree, profile, PlayerId::Player1).value;
    // in a zero-sum game the on-profile utilities cancel
    let eps = (br0 + br1) / 2.0;
    if eps < 0.0 && eps > -1e-10 {
        0.0
    } else {
        eps
    }
}
