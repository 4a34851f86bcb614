//! Three-card Kuhn poker.
//!
//! Cards J < Q < K, one dealt to each player, ante 1, bet size 1. Player 0
//! checks or bets; a check can be answered by a check (showdown) or a bet;
//! facing a bet the options are fold or call. Raw payoffs are in {±1, ±2} and
//! are stored divided by 2.

use crate::efg::{GameTree, NodeId, PlayerId, TreeBuilder};

const SCALE: f64 = 2.0;

pub fn build_kuhn() -> GameTree {
    let mut b = TreeBuilder::new("kuhn");
    let mut deals = Vec::new();
    for c0 in 0..3u8 {
        let mut second = Vec::new();
        for c1 in (0..3u8).filter(|&c| c != c0) {
            second.push((0.5, betting(&mut b, c0, c1, "")));
        }
        deals.push((1.0 / 3.0, b.chance(&second)));
    }
    let root = b.chance(&deals);
    b.finish(root, SCALE)
}

/// Betting sequences use `c` for check/call-as-check and `b` for bet; facing
/// a bet the two actions are fold then call.
fn betting(b: &mut TreeBuilder, c0: u8, c1: u8, seq: &str) -> NodeId {
    let showdown = |stake: f64| if c0 > c1 { stake } else { -stake } / SCALE;
    match seq {
        "" => {
            let check = betting(b, c0, c1, "c");
            let bet = betting(b, c0, c1, "b");
            b.decision(PlayerId::Player0, format!("{c0}|"), &[check, bet])
        }
        "c" => {
            let check = b.terminal(showdown(1.0));
            let bet = betting(b, c0, c1, "cb");
            b.decision(PlayerId::Player1, format!("{c1}|c"), &[check, bet])
        }
        "b" => {
            let fold = b.terminal(1.0 / SCALE);
            let call = b.terminal(showdown(2.0));
            b.decision(PlayerId::Player1, format!("{c1}|b"), &[fold, call])
        }
        "cb" => {
            let fold = b.terminal(-1.0 / SCALE);
            let call = b.terminal(showdown(2.0));
            b.decision(PlayerId::Player0, format!("{c0}|cb"), &[fold, call])
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efg::NodeKind;
    use crate::games::{reference_stats, GameSpec};

    #[test]
    fn matches_reference_sizes() {
        let tree = build_kuhn();
        assert_eq!(tree.stats(), reference_stats(&GameSpec::Kuhn).unwrap());
    }

    #[test]
    fn validates_clean_and_every_infoset_has_two_actions() {
        let tree = build_kuhn();
        assert!(tree.validate().is_empty());
        for id in tree.infoset_ids() {
            assert_eq!(tree.infoset(id).num_actions, 2);
        }
    }

    #[test]
    fn payoffs_normalized_and_cover_both_signs() {
        let tree = build_kuhn();
        let mut max_abs: f64 = 0.0;
        for id in 0..tree.num_nodes() {
            if let NodeKind::Terminal { payoff0 } = tree.node(crate::efg::NodeId(id as u32)) {
                max_abs = max_abs.max(payoff0.abs());
            }
        }
        assert_eq!(max_abs, 1.0);
        assert_eq!(tree.payoff_scale(), 2.0);
    }
}
