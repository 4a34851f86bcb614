//! Generators for the standard two-player zero-sum benchmark games.
//!
//! Every generator is a deterministic pure function of its parameters and
//! produces payoffs normalized to [-1, 1] (the raw-unit factor is recorded on
//! the tree). The structural counts of each supported configuration are pinned
//! against the published benchmark size table; see [`reference_stats`].

mod battleship;
mod goofspiel;
mod kuhn;
mod leduc;
mod liars_dice;

pub use battleship::build_battleship;
pub use goofspiel::build_goofspiel;
pub use kuhn::build_kuhn;
pub use leduc::build_leduc;
pub use liars_dice::build_liars_dice;

use crate::efg::{GameTree, TreeStats};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum GameError {
    #[error("unknown game spec `{0}` (expected kuhn, leduc[:r], goofspiel:n, liars_dice:d, battleship:RxC:S)")]
    UnknownSpec(String),
    #[error("bad parameter in `{spec}`: {reason}")]
    BadParameter { spec: String, reason: String },
}

/// A benchmark game family plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameSpec {
    Kuhn,
    Leduc { ranks: u32 },
    Goofspiel { cards: u32 },
    LiarsDice { sides: u32 },
    Battleship { rows: u32, cols: u32, shots: u32 },
}

impl GameSpec {
    /// Parses the CLI spelling: `kuhn`, `leduc`, `leduc:5`, `goofspiel:4`,
    /// `liars_dice:5`, `battleship:3x2:3`.
    pub fn parse(s: &str) -> Result<GameSpec, GameError> {
        let mut parts = s.split(':');
        let family = parts.next().unwrap_or("");
        let spec = match family {
            "kuhn" => match parts.next() {
                None => GameSpec::Kuhn,
                Some(_) => return Err(GameError::UnknownSpec(s.to_string())),
            },
            "leduc" => {
                let ranks = match parts.next() {
                    None => 3,
                    Some(r) => parse_num(s, r)?,
                };
                GameSpec::Leduc { ranks }
            }
            "goofspiel" => GameSpec::Goofspiel {
                cards: parse_num(s, parts.next().ok_or_else(|| GameError::UnknownSpec(s.to_string()))?)?,
            },
            "liars_dice" => GameSpec::LiarsDice {
                sides: parse_num(s, parts.next().ok_or_else(|| GameError::UnknownSpec(s.to_string()))?)?,
            },
            "battleship" => {
                let grid = parts.next().ok_or_else(|| GameError::UnknownSpec(s.to_string()))?;
                let shots = parts.next().ok_or_else(|| GameError::UnknownSpec(s.to_string()))?;
                let (rows, cols) = grid
                    .split_once('x')
                    .ok_or_else(|| GameError::UnknownSpec(s.to_string()))?;
                GameSpec::Battleship {
                    rows: parse_num(s, rows)?,
                    cols: parse_num(s, cols)?,
                    shots: parse_num(s, shots)?,
                }
            }
            _ => return Err(GameError::UnknownSpec(s.to_string())),
        };
        if parts.next().is_some() {
            return Err(GameError::UnknownSpec(s.to_string()));
        }
        spec.check_parameters()?;
        Ok(spec)
    }

    /// Canonical name, a pure function of the parameters.
    pub fn name(&self) -> String {
        match self {
            GameSpec::Kuhn => "kuhn".to_string(),
            GameSpec::Leduc { ranks } => format!("leduc_{ranks}"),
            GameSpec::Goofspiel { cards } => format!("goofspiel_{cards}"),
            GameSpec::LiarsDice { sides } => format!("liars_dice_{sides}"),
            GameSpec::Battleship { rows, cols, shots } => format!("battleship_{rows}_{cols}_{shots}"),
        }
    }

    pub fn check_parameters(&self) -> Result<(), GameError> {
        let fail = |reason: String| {
            Err(GameError::BadParameter {
                spec: self.name(),
                reason,
            })
        };
        match *self {
            GameSpec::Kuhn => Ok(()),
            GameSpec::Leduc { ranks } => {
                if ranks < 3 {
                    return fail(format!("need at least 3 ranks, got {ranks}"));
                }
                Ok(())
            }
            GameSpec::Goofspiel { cards } => {
                if !(3..=5).contains(&cards) {
                    return fail(format!("supported card counts are 3..=5, got {cards}"));
                }
                Ok(())
            }
            GameSpec::LiarsDice { sides } => {
                if !(2..=6).contains(&sides) {
                    return fail(format!("supported die sides are 2..=6, got {sides}"));
                }
                Ok(())
            }
            GameSpec::Battleship { rows, cols, shots } => {
                if rows == 0 || cols == 0 || shots == 0 {
                    return fail("rows, cols, and shots must be positive".to_string());
                }
                if rows.max(cols) < 2 {
                    return fail(format!("a {rows}x{cols} grid cannot fit a length-2 ship"));
                }
                if shots > rows * cols {
                    return fail(format!("{shots} shots exceed the {} cells", rows * cols));
                }
                Ok(())
            }
        }
    }

    /// Builds the game tree for this spec.
    pub fn build(&self) -> Result<GameTree, GameError> {
        self.check_parameters()?;
        Ok(match *self {
            GameSpec::Kuhn => build_kuhn(),
            GameSpec::Leduc { ranks } => build_leduc(ranks).expect("checked"),
            GameSpec::Goofspiel { cards } => build_goofspiel(cards).expect("checked"),
            GameSpec::LiarsDice { sides } => build_liars_dice(sides).expect("checked"),
            GameSpec::Battleship { rows, cols, shots } => {
                build_battleship(rows, cols, shots).expect("checked")
            }
        })
    }
}

impl std::fmt::Display for GameSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn parse_num(spec: &str, s: &str) -> Result<u32, GameError> {
    s.parse::<u32>().map_err(|_| GameError::BadParameter {
        spec: spec.to_string(),
        reason: format!("`{s}` is not a positive integer"),
    })
}

/// Published sizes for the benchmark configurations: histories, infosets,
/// terminal histories, depth, and max infoset size. Returns `None` for
/// configurations outside the published table.
pub fn reference_stats(spec: &GameSpec) -> Option<TreeStats> {
    let row = |h, i, t, d, m| TreeStats {
        histories: h,
        infosets: i,
        terminal_histories: t,
        depth: d,
        max_infoset_size: m,
    };
    Some(match *spec {
        GameSpec::Kuhn => row(58, 12, 30, 6, 2),
        GameSpec::Leduc { ranks: 3 } => row(9_457, 936, 5_520, 12, 5),
        GameSpec::Leduc { ranks: 5 } => row(55_361, 2_760, 32_760, 12, 9),
        GameSpec::Leduc { ranks: 9 } => row(371_809, 9_288, 221_544, 12, 17),
        GameSpec::Leduc { ranks: 13 } => row(1_179_777, 19_656, 704_600, 12, 25),
        GameSpec::Goofspiel { cards: 4 } => row(1_077, 162, 576, 7, 14),
        GameSpec::Goofspiel { cards: 5 } => row(26_931, 2_124, 14_400, 9, 46),
        GameSpec::LiarsDice { sides: 4 } => row(8_181, 1_024, 4_080, 12, 4),
        GameSpec::LiarsDice { sides: 5 } => row(51_181, 5_120, 25_575, 14, 5),
        GameSpec::Battleship { rows: 3, cols: 2, shots: 3 } => row(732_607, 81_027, 552_132, 9, 7),
        GameSpec::Battleship { rows: 4, cols: 3, shots: 2 } => row(5_462_407, 58_159, 4_966_176, 7, 17),
        _ => return None,
    })
}

/// All configurations with a published reference row.
pub fn reference_specs() -> Vec<GameSpec> {
    vec![
        GameSpec::Kuhn,
        GameSpec::Leduc { ranks: 3 },
        GameSpec::Leduc { ranks: 5 },
        GameSpec::Leduc { ranks: 9 },
        GameSpec::Leduc { ranks: 13 },
        GameSpec::Goofspiel { cards: 4 },
        GameSpec::Goofspiel { cards: 5 },
        GameSpec::LiarsDice { sides: 4 },
        GameSpec::LiarsDice { sides: 5 },
        GameSpec::Battleship { rows: 3, cols: 2, shots: 3 },
        GameSpec::Battleship { rows: 4, cols: 3, shots: 2 },
    ]
}
