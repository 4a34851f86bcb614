//! Imperfect-information Goofspiel with a fixed descending prize order.
//!
//! Both players hold bid cards 1..=n and compete for prizes n, n-1, ..., 1.
//! Bids are simultaneous, serialized here as player 0 moving first with
//! player 1's infosets hiding that pending bid. Players learn only each
//! round's outcome (win/lose/tie), never the opponent's card. A tied round
//! discards the prize. The final round is forced and resolved implicitly.
//! Payoff is the sign of the point difference, already in {-1, 0, 1}.

use crate::efg::{GameTree, NodeId, PlayerId, TreeBuilder};
use crate::games::GameError;

pub fn build_goofspiel(cards: u32) -> Result<GameTree, GameError> {
    if !(3..=5).contains(&cards) {
        return Err(GameError::BadParameter {
            spec: format!("goofspiel_{cards}"),
            reason: format!("supported card counts are 3..=5, got {cards}"),
        });
    }
    let n = cards as u8;
    let mut b = TreeBuilder::new(format!("goofspiel_{cards}"));
    let full: u8 = (1 << n) - 1; // hand bitmask over cards 0..n (worth 1..=n)
    let root = first_mover(&mut b, n, 1, full, full, 0, 0, String::new(), String::new());
    Ok(b.finish(root, 1.0))
}

#[allow(clippy::too_many_arguments)]
fn first_mover(
    b: &mut TreeBuilder,
    n: u8,
    round: u8,
    hand0: u8,
    hand1: u8,
    score0: u32,
    score1: u32,
    key0: String,
    key1: String,
) -> NodeId {
    let children: Vec<NodeId> = cards_in(hand0)
        .map(|c| second_mover(b, n, round, hand0, hand1, score0, score1, &key0, &key1, c))
        .collect();
    b.decision(PlayerId::Player0, key0, &children)
}

#[allow(clippy::too_many_arguments)]
fn second_mover(
    b: &mut TreeBuilder,
    n: u8,
    round: u8,
    hand0: u8,
    hand1: u8,
    score0: u32,
    score1: u32,
    key0: &str,
    key1: &str,
    pending: u8,
) -> NodeId {
    let children: Vec<NodeId> = cards_in(hand1)
        .map(|d| {
            let prize = (n - round + 1) as u32;
            let (mut s0, mut s1) = (score0, score1);
            let outcome = match pending.cmp(&d) {
                std::cmp::Ordering::Greater => {
                    s0 += prize;
                    '>'
                }
                std::cmp::Ordering::Less => {
                    s1 += prize;
                    '<'
                }
                std::cmp::Ordering::Equal => '=',
            };
            let h0 = hand0 & !(1 << pending);
            let h1 = hand1 & !(1 << d);
            if round == n - 1 {
                // the last round is forced: both remaining cards are played
                let c = cards_in(h0).next().unwrap();
                let e = cards_in(h1).next().unwrap();
                match c.cmp(&e) {
                    std::cmp::Ordering::Greater => s0 += 1,
                    std::cmp::Ordering::Less => s1 += 1,
                    std::cmp::Ordering::Equal => {}
                }
                b.terminal(match s0.cmp(&s1) {
                    std::cmp::Ordering::Greater => 1.0,
                    std::cmp::Ordering::Less => -1.0,
                    std::cmp::Ordering::Equal => 0.0,
                })
            } else {
                let k0 = format!("{key0}c{pending}o{outcome}");
                let k1 = format!("{key1}c{d}o{outcome}");
                first_mover(b, n, round + 1, h0, h1, s0, s1, k0, k1)
            }
        })
        .collect();
    b.decision(PlayerId::Player1, key1.to_string(), &children)
}

fn cards_in(hand: u8) -> impl Iterator<Item = u8> {
    (0..8).filter(move |&c| hand & (1 << c) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{reference_stats, GameSpec};

    #[test]
    fn four_cards_matches_reference_sizes() {
        let tree = build_goofspiel(4).unwrap();
        assert_eq!(
            tree.stats(),
            reference_stats(&GameSpec::Goofspiel { cards: 4 }).unwrap()
        );
        assert!(tree.validate().is_empty());
    }

    #[test]
    fn five_cards_matches_reference_sizes() {
        let tree = build_goofspiel(5).unwrap();
        assert_eq!(
            tree.stats(),
            reference_stats(&GameSpec::Goofspiel { cards: 5 }).unwrap()
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(build_goofspiel(2).is_err());
        assert!(build_goofspiel(6).is_err());
    }
}
