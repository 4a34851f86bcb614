//! Battleship on a small grid with one length-2 ship per player.
//!
//! Each player secretly places the ship (horizontal or vertical), then players
//! alternate firing `shots` shots each, player 0 first. A player never repeats
//! one of their own cells and observes hit/miss feedback on their own shots;
//! shot locations are public. The game ends the moment a ship has both cells
//! hit: +1 for the shooter, -1 for the owner. If all shots are spent without a
//! sink the game is a draw.

use crate::efg::{GameTree, NodeId, PlayerId, TreeBuilder};
use crate::games::GameError;

pub fn build_battleship(rows: u32, cols: u32, shots: u32) -> Result<GameTree, GameError> {
    let cells = rows * cols;
    if rows == 0 || cols == 0 || shots == 0 || shots > cells {
        return Err(GameError::BadParameter {
            spec: format!("battleship_{rows}_{cols}_{shots}"),
            reason: "rows, cols, shots must be positive and shots must fit the grid".to_string(),
        });
    }
    if rows.max(cols) < 2 {
        return Err(GameError::BadParameter {
            spec: format!("battleship_{rows}_{cols}_{shots}"),
            reason: format!("a {rows}x{cols} grid cannot fit a length-2 ship"),
        });
    }
    if cells > 32 {
        return Err(GameError::BadParameter {
            spec: format!("battleship_{rows}_{cols}_{shots}"),
            reason: format!("{cells} cells exceed the supported 32"),
        });
    }

    // All placements of a 1x2 ship as cell bitmasks, horizontal then vertical.
    let cell = |r: u32, c: u32| (r * cols + c) as u8;
    let mut ships: Vec<u32> = Vec::new();
    for r in 0..rows {
        for c in 0..cols - 1 {
            ships.push(1 << cell(r, c) | 1 << cell(r, c + 1));
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols {
            ships.push(1 << cell(r, c) | 1 << cell(r + 1, c));
        }
    }

    let mut b = TreeBuilder::new(format!("battleship_{rows}_{cols}_{shots}"));
    let ctx = Ctx {
        cells: cells as u8,
        per_player: shots as u8,
        ships: &ships,
    };
    let mut p0_choices = Vec::with_capacity(ships.len());
    for (pa, _) in ships.iter().enumerate() {
        let mut p1_choices = Vec::with_capacity(ships.len());
        for (pb, _) in ships.iter().enumerate() {
            p1_choices.push(shot_node(&mut b, &ctx, [pa, pb], [0, 0], [0, 0], 0, [String::new(), String::new()]));
        }
        p0_choices.push(b.decision(PlayerId::Player1, "place".to_string(), &p1_choices));
    }
    let root = b.decision(PlayerId::Player0, "place".to_string(), &p0_choices);
    Ok(b.finish(root, 1.0))
}

struct Ctx<'a> {
    cells: u8,
    per_player: u8,
    ships: &'a [u32],
}

/// `fired[p]` is the cell mask player p has shot at, `used[p]` how many shots
/// they have spent. Infoset keys carry the player's own placement, the public
/// shot sequence, and hit/miss feedback on the player's own shots.
fn shot_node(
    b: &mut TreeBuilder,
    ctx: &Ctx<'_>,
    placement: [usize; 2],
    fired: [u32; 2],
    used: [u8; 2],
    turn: usize,
    keys: [String; 2],
) -> NodeId {
    let opponent = 1 - turn;
    let target_ship = ctx.ships[placement[opponent]];
    let mut children = Vec::with_capacity(ctx.cells as usize);
    for cell in 0..ctx.cells {
        let bit = 1u32 << cell;
        if fired[turn] & bit != 0 {
            continue;
        }
        let hit = target_ship & bit != 0;
        let mut new_fired = fired;
        new_fired[turn] |= bit;
        let mut new_used = used;
        new_used[turn] += 1;
        let sunk = target_ship & new_fired[turn] == target_ship;
        let child = if sunk {
            b.terminal(if turn == 0 { 1.0 } else { -1.0 })
        } else if new_used[0] == ctx.per_player && new_used[1] == ctx.per_player {
            b.terminal(0.0)
        } else {
            let mut new_keys = keys.clone();
            new_keys[turn].push_str(&format!("s{cell}{}", if hit { 'h' } else { 'm' }));
            new_keys[opponent].push_str(&format!("o{cell}"));
            shot_node(b, ctx, placement, new_fired, new_used, opponent, new_keys)
        };
        children.push(child);
    }
    let key = format!("{}|{}", placement[turn], keys[turn]);
    b.decision(PlayerId::from_index(turn), key, &children)
}
