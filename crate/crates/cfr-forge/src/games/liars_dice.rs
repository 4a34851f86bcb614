//! Liar's dice with one die per player.
//!
//! Each player privately rolls a `sides`-sided die. Starting with player 0,
//! players alternate making strictly increasing bids (quantity, face), ordered
//! by quantity then face. Instead of raising, a player may call "liar" on the
//! previous bid; once every bid is taken the call is forced. The bid stands if
//! at least `quantity` dice show `face`. Payoffs are ±1.
//!
//! `wild_high` treats the highest face as matching every bid face; the
//! benchmark configuration keeps it off.

use crate::efg::{GameTree, NodeId, PlayerId, TreeBuilder};
use crate::games::GameError;

pub fn build_liars_dice(sides: u32) -> Result<GameTree, GameError> {
    build_liars_dice_with(sides, false)
}

pub fn build_liars_dice_with(sides: u32, wild_high: bool) -> Result<GameTree, GameError> {
    if !(2..=6).contains(&sides) {
        return Err(GameError::BadParameter {
            spec: format!("liars_dice_{sides}"),
            reason: format!("supported die sides are 2..=6, got {sides}"),
        });
    }
    let d = sides as u8;
    let mut b = TreeBuilder::new(format!("liars_dice_{sides}"));
    let p = 1.0 / d as f64;
    let mut rolls0 = Vec::with_capacity(d as usize);
    for r0 in 1..=d {
        let mut rolls1 = Vec::with_capacity(d as usize);
        for r1 in 1..=d {
            rolls1.push((p, bid_node(&mut b, d, wild_high, [r0, r1], 0, 0, String::new())));
        }
        rolls0.push((p, b.chance(&rolls1)));
    }
    let root = b.chance(&rolls0);
    Ok(b.finish(root, 1.0))
}

/// Bids are numbered 1..=2*sides; bid k is quantity 1 + (k-1)/sides of face
/// 1 + (k-1)%sides. `last` is 0 before any bid.
fn bid_node(
    b: &mut TreeBuilder,
    d: u8,
    wild_high: bool,
    rolls: [u8; 2],
    last: u8,
    to_act: usize,
    seq: String,
) -> NodeId {
    let max_bid = 2 * d;
    let mut children = Vec::new();
    for bid in last + 1..=max_bid {
        children.push(bid_node(b, d, wild_high, rolls, bid, 1 - to_act, format!("{seq} {bid}")));
    }
    if last >= 1 {
        let quantity = 1 + (last - 1) / d;
        let face = 1 + (last - 1) % d;
        let count = rolls
            .iter()
            .filter(|&&r| r == face || (wild_high && r == d))
            .count() as u8;
        // the caller wins when the bid fails
        let caller_wins = count < quantity;
        let payoff0 = match (to_act, caller_wins) {
            (0, true) | (1, false) => 1.0,
            _ => -1.0,
        };
        children.push(b.terminal(payoff0));
    }
    let key = format!("{}|{}", rolls[to_act], seq);
    b.decision(PlayerId::from_index(to_act), key, &children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{reference_stats, GameSpec};

    #[test]
    fn four_sides_matches_reference_sizes() {
        let tree = build_liars_dice(4).unwrap();
        assert_eq!(
            tree.stats(),
            reference_stats(&GameSpec::LiarsDice { sides: 4 }).unwrap()
        );
        assert!(tree.validate().is_empty());
    }

    #[test]
    fn five_sides_matches_reference_sizes() {
        let tree = build_liars_dice(5).unwrap();
        assert_eq!(
            tree.stats(),
            reference_stats(&GameSpec::LiarsDice { sides: 5 }).unwrap()
        );
    }

    #[test]
    fn wild_convention_changes_payoffs_not_structure() {
        let plain = build_liars_dice_with(3, false).unwrap();
        let wild = build_liars_dice_with(3, true).unwrap();
        assert_eq!(plain.stats(), wild.stats());
        let sum = |t: &crate::efg::GameTree| {
            (0..t.num_nodes())
                .filter_map(|i| match t.node(crate::efg::NodeId(i as u32)) {
                    crate::efg::NodeKind::Terminal { payoff0 } => Some(payoff0),
                    _ => None,
                })
                .sum::<f64>()
        };
        assert_ne!(sum(&plain), sum(&wild));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(build_liars_dice(1).is_err());
        assert!(build_liars_dice(7).is_err());
    }
}
