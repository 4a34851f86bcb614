//! Extensive-form game trees with information sets.
//!
//! A [`GameTree`] is an immutable, perfect-recall two-player zero-sum game:
//! decision nodes grouped into information sets, chance nodes with fixed
//! distributions, and terminal nodes holding player 0's payoff (player 1's is
//! its negation). Nodes are stored in flat arrays; children are always created
//! before their parent, so ascending node-id order is a bottom-up traversal
//! and descending order is top-down.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use crate::engine::StrategyProfile;

/// Who acts at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlayerId {
    Player0,
    Player1,
    Chance,
}

impl PlayerId {
    /// The other strategic player. Must not be called on `Chance`.
    pub fn other(self) -> PlayerId {
        match self {
            PlayerId::Player0 => PlayerId::Player1,
            PlayerId::Player1 => PlayerId::Player0,
            PlayerId::Chance => panic!("chance has no opponent"),
        }
    }

    /// 0 or 1 for the strategic players.
    pub fn index(self) -> usize {
        match self {
            PlayerId::Player0 => 0,
            PlayerId::Player1 => 1,
            PlayerId::Chance => panic!("chance has no player index"),
        }
    }

    pub fn from_index(i: usize) -> PlayerId {
        match i {
            0 => PlayerId::Player0,
            1 => PlayerId::Player1,
            _ => panic!("player index out of range: {i}"),
        }
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlayerId::Player0 => write!(f, "p0"),
            PlayerId::Player1 => write!(f, "p1"),
            PlayerId::Chance => write!(f, "chance"),
        }
    }
}

/// Dense node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// Dense information-set index (global across both players).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfosetId(pub u32);

impl InfosetId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for InfosetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i{}", self.0)
    }
}

const KIND_DECISION: u8 = 0;
const KIND_CHANCE: u8 = 1;
const KIND_TERMINAL: u8 = 2;

#[derive(Clone)]
struct RawNode {
    first_child: u32,
    child_count: u16,
    kind: u8,
    player: u8,
    // infoset id for decisions, probability-arena offset for chance,
    // payoff-arena offset for terminals
    data: u32,
}

/// Borrowed view of one node.
#[derive(Debug, Clone, Copy)]
pub enum NodeKind<'a> {
    Decision {
        player: PlayerId,
        infoset: InfosetId,
        children: &'a [NodeId],
    },
    Chance {
        probs: &'a [f64],
        children: &'a [NodeId],
    },
    Terminal {
        /// Player 0's payoff in normalized units; player 1 receives its negation.
        payoff0: f64,
    },
}

/// One information set: the acting player, its action count, and the decision
/// nodes it groups.
#[derive(Debug, Clone)]
pub struct Infoset {
    pub player: PlayerId,
    pub num_actions: u16,
    members_start: u32,
    members_len: u32,
}

/// Structural counts of a game tree, in the shape of the published benchmark
/// size table: total histories, infosets, terminal histories, depth (nodes on
/// the longest root-to-leaf path), and the largest infoset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub histories: u64,
    pub infosets: u64,
    pub terminal_histories: u64,
    pub depth: u32,
    pub max_infoset_size: u32,
}

impl fmt::Display for TreeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{histories: {}, infosets: {}, terminals: {}, depth: {}, max_infoset: {}}}",
            self.histories, self.infosets, self.terminal_histories, self.depth, self.max_infoset_size
        )
    }
}

/// Per-node reach probabilities split by contributor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reach {
    pub pi_player0: f64,
    pub pi_player1: f64,
    pub pi_chance: f64,
}

impl Reach {
    /// Full reach probability of the node under the profile.
    pub fn pi(&self) -> f64 {
        self.pi_player0 * self.pi_player1 * self.pi_chance
    }

    /// The named player's own contribution.
    pub fn pi_player(&self, p: PlayerId) -> f64 {
        match p {
            PlayerId::Player0 => self.pi_player0,
            PlayerId::Player1 => self.pi_player1,
            PlayerId::Chance => self.pi_chance,
        }
    }

    /// Everyone but the named player, chance included.
    pub fn pi_opponent(&self, p: PlayerId) -> f64 {
        match p {
            PlayerId::Player0 => self.pi_player1 * self.pi_chance,
            PlayerId::Player1 => self.pi_player0 * self.pi_chance,
            PlayerId::Chance => self.pi_player0 * self.pi_player1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EfgError {
    #[error("strategy profile covers {got} infosets but the game has {expected} (first missing: i{first_missing})")]
    ProfileMismatch {
        expected: usize,
        got: usize,
        first_missing: usize,
    },
}

/// A structural invariant that failed validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ChanceProbSum { node: NodeId, sum: f64 },
    NegativeChanceProb { node: NodeId, prob: f64 },
    EmptyChildren { node: NodeId },
    PayoffOutOfRange { node: NodeId, payoff: f64 },
    MultipleParents { node: NodeId },
    Unreachable { node: NodeId },
    InfosetPlayerMismatch { infoset: InfosetId, node: NodeId },
    InfosetActionCount { infoset: InfosetId, node: NodeId, expected: usize, got: usize },
    DuplicateMember { infoset: InfosetId, node: NodeId },
    MemberNotDecision { infoset: InfosetId, node: NodeId },
    PerfectRecallBreach { infoset: InfosetId, node_a: NodeId, node_b: NodeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChanceProbSum { node, sum } => {
                write!(f, "{node}: chance probabilities sum to {sum}, expected 1")
            }
            Violation::NegativeChanceProb { node, prob } => {
                write!(f, "{node}: negative chance probability {prob}")
            }
            Violation::EmptyChildren { node } => write!(f, "{node}: non-terminal node has no children"),
            Violation::PayoffOutOfRange { node, payoff } => {
                write!(f, "{node}: payoff {payoff} outside [-1, 1]")
            }
            Violation::MultipleParents { node } => write!(f, "{node}: reached by more than one parent"),
            Violation::Unreachable { node } => write!(f, "{node}: unreachable from the root"),
            Violation::InfosetPlayerMismatch { infoset, node } => {
                write!(f, "{infoset}: member {node} owned by a different player")
            }
            Violation::InfosetActionCount { infoset, node, expected, got } => {
                write!(f, "{infoset}: member {node} has {got} actions, infoset has {expected}")
            }
            Violation::DuplicateMember { infoset, node } => {
                write!(f, "{infoset}: member {node} listed more than once")
            }
            Violation::MemberNotDecision { infoset, node } => {
                write!(f, "{infoset}: member {node} is not a decision node")
            }
            Violation::PerfectRecallBreach { infoset, node_a, node_b } => {
                write!(f, "{infoset}: members {node_a} and {node_b} have different own-action histories")
            }
        }
    }
}

/// Immutable extensive-form game.
pub struct GameTree {
    name: String,
    nodes: Vec<RawNode>,
    children: Vec<NodeId>,
    chance_probs: Vec<f64>,
    payoffs: Vec<f64>,
    infosets: Vec<Infoset>,
    members: Vec<NodeId>,
    player_infosets: [Vec<InfosetId>; 2],
    root: NodeId,
    payoff_scale: f64,
    strategy_offsets: Arc<Vec<u32>>,
}

impl GameTree {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_infosets(&self) -> usize {
        self.infosets.len()
    }

    /// Factor that converts normalized payoffs back to the game's raw units.
    pub fn payoff_scale(&self) -> f64 {
        self.payoff_scale
    }

    pub fn node(&self, id: NodeId) -> NodeKind<'_> {
        let raw = &self.nodes[id.idx()];
        let lo = raw.first_child as usize;
        let hi = lo + raw.child_count as usize;
        match raw.kind {
            KIND_DECISION => NodeKind::Decision {
                player: PlayerId::from_index(raw.player as usize),
                infoset: InfosetId(raw.data),
                children: &self.children[lo..hi],
            },
            KIND_CHANCE => {
                let plo = raw.data as usize;
                NodeKind::Chance {
                    probs: &self.chance_probs[plo..plo + raw.child_count as usize],
                    children: &self.children[lo..hi],
                }
            }
            _ => NodeKind::Terminal {
                payoff0: self.payoffs[raw.data as usize],
            },
        }
    }

    pub fn infoset(&self, id: InfosetId) -> &Infoset {
        &self.infosets[id.idx()]
    }

    pub fn members(&self, id: InfosetId) -> &[NodeId] {
        let inf = &self.infosets[id.idx()];
        let lo = inf.members_start as usize;
        &self.members[lo..lo + inf.members_len as usize]
    }

    pub fn infoset_ids(&self) -> impl Iterator<Item = InfosetId> {
        (0..self.infosets.len() as u32).map(InfosetId)
    }

    /// Infosets owned by one player, in id order.
    pub fn player_infosets(&self, p: PlayerId) -> &[InfosetId] {
        &self.player_infosets[p.index()]
    }

    /// Offset table mapping an infoset id to its slot range in flattened
    /// per-action vectors (strategies, regrets, values).
    pub fn strategy_offsets(&self) -> &Arc<Vec<u32>> {
        &self.strategy_offsets
    }

    /// Total number of (infoset, action) slots.
    pub fn num_action_slots(&self) -> usize {
        *self.strategy_offsets.last().unwrap() as usize
    }

    /// Checks every structural invariant and returns all violations found.
    /// An empty report means the tree is well-formed, perfect recall included.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.nodes.len();

        // Local structure.
        for id in 0..n {
            let node = NodeId(id as u32);
            match self.node(node) {
                NodeKind::Decision { children, .. } => {
                    if children.is_empty() {
                        out.push(Violation::EmptyChildren { node });
                    }
                }
                NodeKind::Chance { probs, children } => {
                    if children.is_empty() {
                        out.push(Violation::EmptyChildren { node });
                    }
                    let sum: f64 = probs.iter().sum();
                    if (sum - 1.0).abs() > 1e-12 {
                        out.push(Violation::ChanceProbSum { node, sum });
                    }
                    for &p in probs {
                        if p < 0.0 {
                            out.push(Violation::NegativeChanceProb { node, prob: p });
                        }
                    }
                }
                NodeKind::Terminal { payoff0 } => {
                    if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&payoff0) {
                        out.push(Violation::PayoffOutOfRange { node, payoff: payoff0 });
                    }
                }
            }
        }

        // Tree shape: one parent each, all reachable from the root.
        let mut parents = vec![0u8; n];
        for id in 0..n {
            for &c in self.children_of(NodeId(id as u32)) {
                let slot = &mut parents[c.idx()];
                *slot = slot.saturating_add(1);
            }
        }
        for (i, &count) in parents.iter().enumerate() {
            if count > 1 {
                out.push(Violation::MultipleParents { node: NodeId(i as u32) });
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            if seen[u.idx()] {
                continue;
            }
            seen[u.idx()] = true;
            stack.extend_from_slice(self.children_of(u));
        }
        for (i, &s) in seen.iter().enumerate() {
            if !s {
                out.push(Violation::Unreachable { node: NodeId(i as u32) });
            }
        }

        // Infoset partition.
        let mut covered = vec![false; n];
        for id in self.infoset_ids() {
            let inf = self.infoset(id);
            for &m in self.members(id) {
                if covered[m.idx()] {
                    out.push(Violation::DuplicateMember { infoset: id, node: m });
                }
                covered[m.idx()] = true;
                match self.node(m) {
                    NodeKind::Decision { player, infoset, children } => {
                        if player != inf.player || infoset != id {
                            out.push(Violation::InfosetPlayerMismatch { infoset: id, node: m });
                        }
                        if children.len() != inf.num_actions as usize {
                            out.push(Violation::InfosetActionCount {
                                infoset: id,
                                node: m,
                                expected: inf.num_actions as usize,
                                got: children.len(),
                            });
                        }
                    }
                    _ => out.push(Violation::MemberNotDecision { infoset: id, node: m }),
                }
            }
        }
        for (id, &cov) in covered.iter().enumerate() {
            if cov {
                continue;
            }
            if let NodeKind::Decision { infoset, .. } = self.node(NodeId(id as u32)) {
                // surfaced as a player mismatch against its own recorded infoset
                out.push(Violation::InfosetPlayerMismatch {
                    infoset,
                    node: NodeId(id as u32),
                });
            }
        }

        self.check_perfect_recall(&mut out);
        out
    }

    /// Perfect recall: all members of an infoset share the acting player's
    /// full (infoset, action) sequence from the root.
    fn check_perfect_recall(&self, out: &mut Vec<Violation>) {
        // Own-action history per node for the acting player, built top-down.
        // Histories are shared via parent links to avoid quadratic copying.
        #[derive(Clone, Copy)]
        struct Link {
            parent: u32, // u32::MAX = empty
            infoset: InfosetId,
            action: u16,
        }
        let n = self.nodes.len();
        let mut links: Vec<Link> = Vec::new();
        // per node, per player: index into links (u32::MAX = empty history)
        let mut hist = vec![[u32::MAX; 2]; n];
        let mut stack = vec![self.root];
        let mut order = Vec::with_capacity(n);
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend_from_slice(self.children_of(u));
        }
        // `order` is top-down (parents precede children on every path).
        let mut visited = vec![false; n];
        for &u in &order {
            if visited[u.idx()] {
                continue;
            }
            visited[u.idx()] = true;
            let h = hist[u.idx()];
            match self.node(u) {
                NodeKind::Decision { player, infoset, children } => {
                    for (a, &c) in children.iter().enumerate() {
                        let mut ch = h;
                        links.push(Link {
                            parent: h[player.index()],
                            infoset,
                            action: a as u16,
                        });
                        ch[player.index()] = (links.len() - 1) as u32;
                        hist[c.idx()] = ch;
                    }
                }
                NodeKind::Chance { children, .. } => {
                    for &c in children {
                        hist[c.idx()] = h;
                    }
                }
                NodeKind::Terminal { .. } => {}
            }
        }
        let history_of = |mut link: u32| {
            let mut seq = Vec::new();
            while link != u32::MAX {
                let l = links[link as usize];
                seq.push((l.infoset, l.action));
                link = l.parent;
            }
            seq
        };
        for id in self.infoset_ids() {
            let members = self.members(id);
            let Some((&first, rest)) = members.split_first() else {
                continue;
            };
            let player = self.infoset(id).player;
            let reference = history_of(hist[first.idx()][player.index()]);
            for &m in rest {
                if history_of(hist[m.idx()][player.index()]) != reference {
                    out.push(Violation::PerfectRecallBreach {
                        infoset: id,
                        node_a: first,
                        node_b: m,
                    });
                }
            }
        }
    }

    /// Structural counts in one traversal. Depth counts nodes on the longest
    /// root-to-leaf path (so a bare terminal root has depth 1).
    pub fn stats(&self) -> TreeStats {
        let mut terminal = 0u64;
        let mut depth = 0u32;
        let mut stack = vec![(self.root, 1u32)];
        while let Some((u, d)) = stack.pop() {
            depth = depth.max(d);
            match self.node(u) {
                NodeKind::Terminal { .. } => terminal += 1,
                _ => {
                    for &c in self.children_of(u) {
                        stack.push((c, d + 1));
                    }
                }
            }
        }
        let max_infoset_size = self
            .infosets
            .iter()
            .map(|i| i.members_len)
            .max()
            .unwrap_or(0);
        TreeStats {
            histories: self.nodes.len() as u64,
            infosets: self.infosets.len() as u64,
            terminal_histories: terminal,
            depth,
            max_infoset_size,
        }
    }

    /// Per-node reach probabilities under a profile, split into player 0,
    /// player 1, and chance contributions. The root carries (1, 1, 1).
    pub fn reach_probabilities(&self, profile: &StrategyProfile) -> Result<Vec<Reach>, EfgError> {
        if profile.num_infosets() != self.num_infosets() {
            return Err(EfgError::ProfileMismatch {
                expected: self.num_infosets(),
                got: profile.num_infosets(),
                first_missing: profile.num_infosets().min(self.num_infosets()),
            });
        }
        let mut out = vec![
            Reach {
                pi_player0: 0.0,
                pi_player1: 0.0,
                pi_chance: 0.0,
            };
            self.nodes.len()
        ];
        out[self.root.idx()] = Reach {
            pi_player0: 1.0,
            pi_player1: 1.0,
            pi_chance: 1.0,
        };
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            let r = out[u.idx()];
            match self.node(u) {
                NodeKind::Decision { player, infoset, children } => {
                    let sigma = profile.get(infoset);
                    for (a, &c) in children.iter().enumerate() {
                        let mut cr = r;
                        match player {
                            PlayerId::Player0 => cr.pi_player0 *= sigma[a],
                            PlayerId::Player1 => cr.pi_player1 *= sigma[a],
                            PlayerId::Chance => unreachable!(),
                        }
                        out[c.idx()] = cr;
                        stack.push(c);
                    }
                }
                NodeKind::Chance { probs, children } => {
                    for (a, &c) in children.iter().enumerate() {
                        let mut cr = r;
                        cr.pi_chance *= probs[a];
                        out[c.idx()] = cr;
                        stack.push(c);
                    }
                }
                NodeKind::Terminal { .. } => {}
            }
        }
        Ok(out)
    }

    /// Line-oriented debug dump: `id kind parent action payload`.
    pub fn dump(&self, w: &mut impl Write) -> io::Result<()> {
        let n = self.nodes.len();
        let mut parent = vec![(u32::MAX, 0u16); n];
        for id in 0..n {
            for (a, &c) in self.children_of(NodeId(id as u32)).iter().enumerate() {
                parent[c.idx()] = (id as u32, a as u16);
            }
        }
        writeln!(w, "# game {} nodes {} scale {}", self.name, n, self.payoff_scale)?;
        for (id, &(p, a)) in parent.iter().enumerate() {
            let p = if p == u32::MAX { "-".to_string() } else { p.to_string() };
            match self.node(NodeId(id as u32)) {
                NodeKind::Decision { player, infoset, .. } => {
                    writeln!(w, "{id} decision {p} {a} {player} {infoset}")?
                }
                NodeKind::Chance { .. } => writeln!(w, "{id} chance {p} {a}")?,
                NodeKind::Terminal { payoff0 } => writeln!(w, "{id} terminal {p} {a} {payoff0}")?,
            }
        }
        Ok(())
    }

    pub(crate) fn children_of(&self, id: NodeId) -> &[NodeId] {
        let raw = &self.nodes[id.idx()];
        let lo = raw.first_child as usize;
        &self.children[lo..lo + raw.child_count as usize]
    }
}

/// Incremental constructor. Children must be created before their parent, so
/// finished trees always satisfy the bottom-up id ordering.
pub struct TreeBuilder {
    name: String,
    nodes: Vec<RawNode>,
    children: Vec<NodeId>,
    chance_probs: Vec<f64>,
    payoffs: Vec<f64>,
    infosets: Vec<(PlayerId, u16)>,
    members: Vec<Vec<NodeId>>,
    keys: HashMap<(u8, String), InfosetId>,
}

impl TreeBuilder {
    pub fn new(name: impl Into<String>) -> TreeBuilder {
        TreeBuilder {
            name: name.into(),
            nodes: Vec::new(),
            children: Vec::new(),
            chance_probs: Vec::new(),
            payoffs: Vec::new(),
            infosets: Vec::new(),
            members: Vec::new(),
            keys: HashMap::new(),
        }
    }

    pub fn terminal(&mut self, payoff0: f64) -> NodeId {
        let data = self.payoffs.len() as u32;
        self.payoffs.push(payoff0);
        self.push(RawNode {
            first_child: 0,
            child_count: 0,
            kind: KIND_TERMINAL,
            player: 2,
            data,
        })
    }

    pub fn chance(&mut self, outcomes: &[(f64, NodeId)]) -> NodeId {
        let first_child = self.children.len() as u32;
        let data = self.chance_probs.len() as u32;
        for &(p, c) in outcomes {
            self.chance_probs.push(p);
            self.children.push(c);
        }
        self.push(RawNode {
            first_child,
            child_count: outcomes.len() as u16,
            kind: KIND_CHANCE,
            player: 2,
            data,
        })
    }

    /// Decision node whose infoset is interned by `key` (scoped per player).
    /// The infoset's action count is fixed by the first node that uses it.
    pub fn decision(&mut self, player: PlayerId, key: String, children: &[NodeId]) -> NodeId {
        let infoset = match self.keys.get(&(player.index() as u8, key.clone())) {
            Some(&id) => id,
            None => {
                let id = self.new_infoset(player, children.len() as u16);
                self.keys.insert((player.index() as u8, key), id);
                id
            }
        };
        self.decision_in(player, infoset, children)
    }

    /// Explicitly allocated infoset, for hand-built trees.
    pub fn new_infoset(&mut self, player: PlayerId, num_actions: u16) -> InfosetId {
        let id = InfosetId(self.infosets.len() as u32);
        self.infosets.push((player, num_actions));
        self.members.push(Vec::new());
        id
    }

    /// Decision node attached to an existing infoset. No consistency checks
    /// here; `GameTree::validate` reports any mismatch.
    pub fn decision_in(&mut self, player: PlayerId, infoset: InfosetId, children: &[NodeId]) -> NodeId {
        let first_child = self.children.len() as u32;
        self.children.extend_from_slice(children);
        let id = self.push(RawNode {
            first_child,
            child_count: children.len() as u16,
            kind: KIND_DECISION,
            player: player.index() as u8,
            data: infoset.0,
        });
        self.members[infoset.idx()].push(id);
        id
    }

    fn push(&mut self, raw: RawNode) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(raw);
        id
    }

    /// Seals the tree. `payoff_scale` records the raw-unit factor that the
    /// stored payoffs were divided by to land in [-1, 1].
    pub fn finish(self, root: NodeId, payoff_scale: f64) -> GameTree {
        let mut infosets = Vec::with_capacity(self.infosets.len());
        let mut members = Vec::new();
        let mut offsets = Vec::with_capacity(self.infosets.len() + 1);
        let mut slot = 0u32;
        for ((player, num_actions), m) in self.infosets.iter().zip(&self.members) {
            offsets.push(slot);
            slot += *num_actions as u32;
            infosets.push(Infoset {
                player: *player,
                num_actions: *num_actions,
                members_start: members.len() as u32,
                members_len: m.len() as u32,
            });
            members.extend_from_slice(m);
        }
        offsets.push(slot);
        let mut player_infosets = [Vec::new(), Vec::new()];
        for (i, inf) in infosets.iter().enumerate() {
            if inf.player != PlayerId::Chance {
                player_infosets[inf.player.index()].push(InfosetId(i as u32));
            }
        }
        GameTree {
            name: self.name,
            nodes: self.nodes,
            children: self.children,
            chance_probs: self.chance_probs,
            payoffs: self.payoffs,
            infosets,
            members,
            player_infosets,
            root,
            payoff_scale,
            strategy_offsets: Arc::new(offsets),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::StrategyProfile;
    use crate::games;

    /// A two-level toy: chance picks between two player-0 decisions.
    fn toy_tree(flip_children: bool) -> GameTree {
        let mut b = TreeBuilder::new("toy");
        let make_decision = |b: &mut TreeBuilder, tag: &str, flip: bool| {
            let z0 = b.terminal(0.25);
            let z1 = b.terminal(-0.5);
            let kids = if flip { [z1, z0] } else { [z0, z1] };
            b.decision(PlayerId::Player0, format!("d{tag}"), &kids)
        };
        let d0 = make_decision(&mut b, "0", flip_children);
        let d1 = make_decision(&mut b, "1", flip_children);
        let root = b.chance(&[(0.5, d0), (0.5, d1)]);
        b.finish(root, 1.0)
    }

    #[test]
    fn toy_tree_validates_clean() {
        assert!(toy_tree(false).validate().is_empty());
    }

    #[test]
    fn stats_invariant_under_child_reordering() {
        assert_eq!(toy_tree(false).stats(), toy_tree(true).stats());
    }

    #[test]
    fn chance_prob_sum_violation_reported() {
        let mut b = TreeBuilder::new("bad");
        let z0 = b.terminal(1.0);
        let z1 = b.terminal(-1.0);
        let root = b.chance(&[(0.6, z0), (0.6, z1)]);
        let tree = b.finish(root, 1.0);
        let report = tree.validate();
        assert!(
            report
                .iter()
                .any(|v| matches!(v, Violation::ChanceProbSum { .. })),
            "expected a probability-sum violation, got {report:?}"
        );
    }

    #[test]
    fn action_count_mismatch_reported() {
        let mut b = TreeBuilder::new("bad");
        let z0 = b.terminal(0.0);
        let z1 = b.terminal(0.0);
        let z2 = b.terminal(0.0);
        let z3 = b.terminal(0.0);
        let z4 = b.terminal(0.0);
        let d0 = b.decision(PlayerId::Player0, "same".into(), &[z0, z1]);
        let d1 = b.decision(PlayerId::Player0, "same".into(), &[z2, z3, z4]);
        let root = b.chance(&[(0.5, d0), (0.5, d1)]);
        let tree = b.finish(root, 1.0);
        let report = tree.validate();
        assert!(
            report
                .iter()
                .any(|v| matches!(v, Violation::InfosetActionCount { .. })),
            "expected an action-count violation, got {report:?}"
        );
    }

    #[test]
    fn perfect_recall_breach_reported() {
        // Player 0 acts twice on the left branch but the second decision is
        // interned into the same infoset as a first-decision node on the right.
        let mut b = TreeBuilder::new("bad");
        let z0 = b.terminal(0.0);
        let z1 = b.terminal(0.0);
        let inner = b.decision(PlayerId::Player0, "shared".into(), &[z0, z1]);
        let z2 = b.terminal(0.0);
        let left = b.decision(PlayerId::Player0, "left".into(), &[inner, z2]);
        let z3 = b.terminal(0.0);
        let z4 = b.terminal(0.0);
        let right = b.decision(PlayerId::Player0, "shared".into(), &[z3, z4]);
        let root = b.chance(&[(0.5, left), (0.5, right)]);
        let tree = b.finish(root, 1.0);
        let report = tree.validate();
        assert!(
            report
                .iter()
                .any(|v| matches!(v, Violation::PerfectRecallBreach { .. })),
            "expected a perfect-recall violation, got {report:?}"
        );
    }

    #[test]
    fn multiple_parent_violation_reported() {
        let mut b = TreeBuilder::new("bad");
        let z0 = b.terminal(0.0);
        let z1 = b.terminal(0.0);
        let root = b.chance(&[(0.5, z0), (0.3, z1), (0.2, z0)]);
        let tree = b.finish(root, 1.0);
        let report = tree.validate();
        assert!(report.iter().any(|v| matches!(v, Violation::MultipleParents { .. })));
    }

    #[test]
    fn reach_probabilities_examples() {
        // Chance 0.5 into a player-0 node whose first action has prob 0.25.
        let mut b = TreeBuilder::new("reach");
        let z0 = b.terminal(0.0);
        let z1 = b.terminal(0.0);
        let d = b.decision(PlayerId::Player0, "d".into(), &[z0, z1]);
        let z2 = b.terminal(0.0);
        let root = b.chance(&[(0.5, d), (0.5, z2)]);
        let tree = b.finish(root, 1.0);

        let mut profile = StrategyProfile::uniform(&tree);
        profile.get_mut(InfosetId(0)).copy_from_slice(&[0.25, 0.75]);
        let reach = tree.reach_probabilities(&profile).unwrap();

        let r = reach[tree.root().idx()];
        assert_eq!((r.pi_player0, r.pi_player1, r.pi_chance), (1.0, 1.0, 1.0));

        let after = reach[z0.idx()];
        assert!((after.pi() - 0.125).abs() < 1e-15);
        assert!((after.pi_player(PlayerId::Player0) - 0.25).abs() < 1e-15);
        assert!((after.pi_opponent(PlayerId::Player0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reach_conserves_probability_on_kuhn() {
        let tree = games::build_kuhn();
        let profile = StrategyProfile::uniform(&tree);
        let reach = tree.reach_probabilities(&profile).unwrap();
        let mut total = 0.0;
        for (id, r) in reach.iter().enumerate() {
            if let NodeKind::Terminal { .. } = tree.node(NodeId(id as u32)) {
                total += r.pi();
            }
        }
        assert!((total - 1.0).abs() < 1e-10, "terminal reach sums to {total}");
        for r in &reach {
            let p0 = r.pi_player(PlayerId::Player0) * r.pi_opponent(PlayerId::Player0);
            assert!((r.pi() - p0).abs() < 1e-12);
        }
    }

    #[test]
    fn profile_mismatch_error_names_infoset() {
        let tree = games::build_kuhn();
        let toy = toy_tree(false);
        let profile = StrategyProfile::uniform(&toy);
        let err = tree.reach_probabilities(&profile).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("12") && msg.contains("2"), "unhelpful error: {msg}");
    }

    #[test]
    fn dump_emits_one_line_per_node() {
        let tree = toy_tree(false);
        let mut buf = Vec::new();
        tree.dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // header + one line per node
        assert_eq!(text.lines().count(), 1 + tree.num_nodes());
    }
}
