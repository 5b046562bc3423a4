//! The game graph: strategy profiles as nodes, unilateral deviations as
//! edges. It is the product of one clique per player, so edges and
//! triangles are indexed arithmetically instead of being stored.

use std::collections::VecDeque;

use crate::error::Result;
use crate::game::Shape;

/// An undirected edge in canonical orientation (`from < to`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    /// The deviating player.
    pub player: usize,
}

/// A 3-clique `nodes[0] < nodes[1] < nodes[2]`; all three profiles differ
/// only in `player`'s strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub player: usize,
    pub nodes: [usize; 3],
}

#[inline]
fn pairs(h: usize) -> usize {
    h * h.saturating_sub(1) / 2
}

#[inline]
fn triples(h: usize) -> usize {
    if h < 3 {
        0
    } else {
        h * (h - 1) * (h - 2) / 6
    }
}

/// Position of `(a, b)`, `a < b`, in the lexicographic list of pairs of
/// `0..h`.
#[inline]
fn pair_index(a: usize, b: usize, h: usize) -> usize {
    debug_assert!(a < b && b < h);
    a * h - a * (a + 1) / 2 + (b - a - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameGraph {
    shape: Shape,
    /// First edge id of each player's edge set A^m.
    offsets: Vec<usize>,
    num_edges: usize,
}

impl GameGraph {
    pub fn new(counts: &[usize]) -> Result<Self> {
        Ok(Self::from_shape(Shape::new(counts)?))
    }

    pub fn from_shape(shape: Shape) -> Self {
        let mut offsets = Vec::with_capacity(shape.num_players());
        let mut total = 0;
        for m in 0..shape.num_players() {
            offsets.push(total);
            total += shape.opponent_profiles(m) * pairs(shape.count(m));
        }
        GameGraph {
            shape,
            offsets,
            num_edges: total,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn num_nodes(&self) -> usize {
        self.shape.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_player_edges(&self, m: usize) -> usize {
        self.shape.opponent_profiles(m) * pairs(self.shape.count(m))
    }

    pub fn num_triangles(&self) -> usize {
        (0..self.shape.num_players())
            .map(|m| self.shape.opponent_profiles(m) * triples(self.shape.count(m)))
            .sum()
    }

    /// The player whose unilateral deviation connects `p` and `q`, or
    /// `None` when the profiles are equal or differ in more than one
    /// coordinate.
    pub fn comparable(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return None;
        }
        let mut witness = None;
        for m in 0..self.shape.num_players() {
            if self.shape.coordinate(m, p) != self.shape.coordinate(m, q) {
                if witness.is_some() {
                    return None;
                }
                witness = Some(m);
            }
        }
        witness
    }

    /// Edge id of player `m`'s edge inside opponent block `block` between
    /// own strategies `a < b`.
    #[inline]
    pub(crate) fn player_edge_id(&self, m: usize, block: usize, a: usize, b: usize) -> usize {
        let h = self.shape.count(m);
        self.offsets[m] + block * pairs(h) + pair_index(a, b, h)
    }

    /// Edge id and orientation sign of the ordered pair `(p, q)`: `+1` when
    /// `p < q` (canonical), `-1` otherwise.
    pub fn edge_id(&self, p: usize, q: usize) -> Option<(usize, f64)> {
        let m = self.comparable(p, q)?;
        let block = self.shape.block_of(m, p);
        let (a, b) = (self.shape.coordinate(m, p), self.shape.coordinate(m, q));
        if a < b {
            Some((self.player_edge_id(m, block, a, b), 1.0))
        } else {
            Some((self.player_edge_id(m, block, b, a), -1.0))
        }
    }

    /// Edges of player `m` (the set A^m), in id order.
    pub fn player_edges(&self, m: usize) -> impl Iterator<Item = Edge> + '_ {
        let h = self.shape.count(m);
        let offset = self.offsets[m];
        (0..self.shape.opponent_profiles(m)).flat_map(move |block| {
            (0..h).flat_map(move |a| {
                (a + 1..h).map(move |b| {
                    let from = self.shape.node_in_block(m, block, a);
                    let to = self.shape.node_in_block(m, block, b);
                    Edge {
                        id: offset + block * pairs(h) + pair_index(a, b, h),
                        from,
                        to,
                        player: m,
                    }
                })
            })
        })
    }

    /// All edges, grouped by player, in id order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.shape.num_players()).flat_map(move |m| self.player_edges(m))
    }

    /// Neighbours of `p` with the deviating player.
    pub fn neighbors(&self, p: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.shape.num_players()).flat_map(move |m| {
            let own = self.shape.coordinate(m, p);
            (0..self.shape.count(m))
                .filter(move |&b| b != own)
                .map(move |b| (self.shape.deviate(m, p, b), m))
        })
    }

    /// All 3-cliques, generated on demand.
    pub fn triangles(&self) -> impl Iterator<Item = Triangle> + '_ {
        (0..self.shape.num_players()).flat_map(move |m| {
            let h = self.shape.count(m);
            (0..self.shape.opponent_profiles(m)).flat_map(move |block| {
                (0..h).flat_map(move |a| {
                    (a + 1..h).flat_map(move |b| {
                        (b + 1..h).map(move |c| Triangle {
                            player: m,
                            nodes: [
                                self.shape.node_in_block(m, block, a),
                                self.shape.node_in_block(m, block, b),
                                self.shape.node_in_block(m, block, c),
                            ],
                        })
                    })
                })
            })
        })
    }

    /// Breadth-first connectivity check.
    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(p) = queue.pop_front() {
            for (q, _) in self.neighbors(p) {
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    queue.push_back(q);
                }
            }
        }
        count == n
    }
}
