//! Leduc hold'em, parametric in the number of ranks.
//!
//! The deck has `ranks` ranks in two suits. Each player antes 1 and receives
//! one private card; after the first betting round a single public board card
//! is dealt, then a second round is played. Raises are fixed at 2 in round one
//! and 4 in round two, at most two raises per round, and folding is only
//! possible when facing a raise. At showdown a private card pairing the board
//! beats everything, otherwise the higher rank wins and equal ranks split.
//! The maximum stake per player is 13, which is the normalization factor.

use crate::efg::{GameTree, NodeId, PlayerId, TreeBuilder};
use crate::games::GameError;

const SCALE: f64 = 13.0;

pub fn build_leduc(ranks: u32) -> Result<GameTree, GameError> {
    if ranks < 3 {
        return Err(GameError::BadParameter {
            spec: format!("leduc_{ranks}"),
            reason: format!("need at least 3 ranks, got {ranks}"),
        });
    }
    let deck = (ranks * 2) as u8;
    let mut b = TreeBuilder::new(format!("leduc_{ranks}"));
    let mut deals0 = Vec::with_capacity(deck as usize);
    for c0 in 0..deck {
        let mut deals1 = Vec::with_capacity(deck as usize - 1);
        let p1 = 1.0 / (deck as f64 - 1.0);
        for c1 in (0..deck).filter(|&c| c != c0) {
            let node = bet_node(&mut b, deck, [c0, c1], None, [1, 1], 0, 0, String::new(), "");
            deals1.push((p1, node));
        }
        deals0.push((1.0 / deck as f64, b.chance(&deals1)));
    }
    let root = b.chance(&deals0);
    Ok(b.finish(root, SCALE))
}

/// One betting decision. `seq` is this round's action string (`c`/`r`),
/// `round1` is the completed first-round string plus board for round-two keys.
#[allow(clippy::too_many_arguments)]
fn bet_node(
    b: &mut TreeBuilder,
    deck: u8,
    cards: [u8; 2],
    board: Option<u8>,
    spent: [u32; 2],
    raises: u8,
    to_act: usize,
    seq: String,
    round1: &str,
) -> NodeId {
    let other = 1 - to_act;
    let facing = spent[other] > spent[to_act];
    let bet = if board.is_none() { 2 } else { 4 };
    let mut children = Vec::with_capacity(3);

    if facing {
        // fold: the folder forfeits their stake
        let payoff = if to_act == 0 {
            -(spent[0] as f64)
        } else {
            spent[1] as f64
        };
        children.push(b.terminal(payoff / SCALE));
    }

    // call (a check when nothing is outstanding)
    {
        let mut s = spent;
        s[to_act] = spent[other];
        let round_over = facing || seq == "c";
        let child = if round_over {
            round_end(b, deck, cards, board, s, format!("{seq}c"), round1)
        } else {
            bet_node(b, deck, cards, board, s, raises, other, format!("{seq}c"), round1)
        };
        children.push(child);
    }

    if raises < 2 {
        let mut s = spent;
        s[to_act] = spent[other] + bet;
        children.push(bet_node(b, deck, cards, board, s, raises + 1, other, format!("{seq}r"), round1));
    }

    let key = match board {
        None => format!("{}|{}", cards[to_act], seq),
        Some(bd) => format!("{}|{}|{}|{}", cards[to_act], round1, bd, seq),
    };
    b.decision(PlayerId::from_index(to_act), key, &children)
}

fn round_end(
    b: &mut TreeBuilder,
    deck: u8,
    cards: [u8; 2],
    board: Option<u8>,
    spent: [u32; 2],
    seq: String,
    round1: &str,
) -> NodeId {
    match board {
        None => {
            // deal the board card, then the second round
            let remaining: Vec<u8> = (0..deck).filter(|&c| c != cards[0] && c != cards[1]).collect();
            let p = 1.0 / remaining.len() as f64;
            let outcomes: Vec<(f64, NodeId)> = remaining
                .iter()
                .map(|&bd| {
                    let node = bet_node(b, deck, cards, Some(bd), spent, 0, 0, String::new(), &seq);
                    (p, node)
                })
                .collect();
            b.chance(&outcomes)
        }
        Some(bd) => {
            let _ = round1;
            debug_assert_eq!(spent[0], spent[1]);
            let rank = |c: u8| c / 2;
            let winner = if rank(cards[0]) == rank(bd) {
                Some(0)
            } else if rank(cards[1]) == rank(bd) {
                Some(1)
            } else if rank(cards[0]) > rank(cards[1]) {
                Some(0)
            } else if rank(cards[1]) > rank(cards[0]) {
                Some(1)
            } else {
                None
            };
            let payoff = match winner {
                Some(0) => spent[1] as f64,
                Some(_) => -(spent[0] as f64),
                None => 0.0,
            };
            b.terminal(payoff / SCALE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{reference_stats, GameSpec};

    #[test]
    fn standard_leduc_matches_reference_sizes() {
        let tree = build_leduc(3).unwrap();
        assert_eq!(
            tree.stats(),
            reference_stats(&GameSpec::Leduc { ranks: 3 }).unwrap()
        );
        assert!(tree.validate().is_empty());
    }

    #[test]
    fn five_rank_leduc_matches_reference_sizes() {
        let tree = build_leduc(5).unwrap();
        assert_eq!(
            tree.stats(),
            reference_stats(&GameSpec::Leduc { ranks: 5 }).unwrap()
        );
    }

    #[test]
    fn rejects_too_few_ranks() {
        assert!(build_leduc(2).is_err());
    }
}
