//! Flows on the game graph and the combinatorial calculus acting on them:
//! gradient, curl, the gradient adjoint, player-restricted operators,
//! Laplacians and the per-player projections.
//!
//! Node functions are plain `[f64]` slices of length |E| in profile order.
//! An [`EdgeFlow`] stores one value per undirected edge in the canonical
//! orientation (lower profile index first); the reverse orientation reads
//! as the negation, so antisymmetry holds by construction.

use std::fmt::Write as _;

use crate::error::{GameError, Result};
use crate::game::{Game, Shape};
use crate::graph::GameGraph;

/// Real-valued function on strategy profiles (an element of C_0).
pub type NodeFunction = Vec<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFlow {
    values: Vec<f64>,
}

impl EdgeFlow {
    pub fn zeros(graph: &GameGraph) -> Self {
        EdgeFlow {
            values: vec![0.0; graph.num_edges()],
        }
    }

    /// Wraps per-edge values given in edge-id order.
    pub fn from_values(graph: &GameGraph, values: Vec<f64>) -> Result<Self> {
        if values.len() != graph.num_edges() {
            return Err(GameError::ShapeMismatch(format!(
                "flow has {} values, graph has {} edges",
                values.len(),
                graph.num_edges()
            )));
        }
        Ok(EdgeFlow { values })
    }

    /// Values in canonical orientation, indexed by edge id.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// X(p, q); zero when `p` and `q` are not comparable.
    pub fn get(&self, graph: &GameGraph, p: usize, q: usize) -> f64 {
        match graph.edge_id(p, q) {
            Some((id, sign)) => sign * self.values[id],
            None => 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    pub fn sub(&self, other: &EdgeFlow) -> EdgeFlow {
        EdgeFlow {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &EdgeFlow) -> EdgeFlow {
        EdgeFlow {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// One value per triangle of the game graph, in [`GameGraph::triangles`]
/// order, for the orientation `(nodes[0], nodes[1], nodes[2])`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleFlow {
    values: Vec<f64>,
}

impl TriangleFlow {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }
}

/// Sign of the permutation taking `(a, b, c)` to ascending order, or zero
/// when two entries coincide.
pub fn orientation_sign(a: usize, b: usize, c: usize) -> f64 {
    if a == b || b == c || a == c {
        return 0.0;
    }
    let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_len(graph: &GameGraph, f: &[f64]) -> Result<()> {
    if f.len() != graph.num_nodes() {
        return Err(GameError::ShapeMismatch(format!(
            "node function has length {}, graph has {} nodes",
            f.len(),
            graph.num_nodes()
        )));
    }
    Ok(())
}

/// Π_m: removes, for every opponent profile, the mean of `u` over player
/// `m`'s own strategies.
pub fn project_player(shape: &Shape, m: usize, u: &[f64]) -> NodeFunction {
    let h = shape.count(m);
    let mut out = u.to_vec();
    for block in 0..shape.opponent_profiles(m) {
        let mean = (0..h)
            .map(|a| u[shape.node_in_block(m, block, a)])
            .sum::<f64>()
            / h as f64;
        for a in 0..h {
            out[shape.node_in_block(m, block, a)] -= mean;
        }
    }
    out
}

impl GameGraph {
    /// δ0: `X(p,q) = φ(q) − φ(p)` on every edge.
    pub fn gradient(&self, phi: &[f64]) -> Result<EdgeFlow> {
        check_len(self, phi)?;
        let mut values = vec![0.0; self.num_edges()];
        for e in self.edges() {
            values[e.id] = phi[e.to] - phi[e.from];
        }
        Ok(EdgeFlow { values })
    }

    /// D_m: the gradient restricted to player `m`'s edges.
    pub fn player_gradient(&self, m: usize, phi: &[f64]) -> Result<EdgeFlow> {
        self.shape().check_player(m)?;
        check_len(self, phi)?;
        let mut values = vec![0.0; self.num_edges()];
        for e in self.player_edges(m) {
            values[e.id] = phi[e.to] - phi[e.from];
        }
        Ok(EdgeFlow { values })
    }

    /// Λ_m: zeroes a flow outside player `m`'s edges.
    pub fn restrict_to_player(&self, m: usize, x: &EdgeFlow) -> Result<EdgeFlow> {
        self.shape().check_player(m)?;
        let mut values = vec![0.0; self.num_edges()];
        for e in self.player_edges(m) {
            values[e.id] = x.values[e.id];
        }
        Ok(EdgeFlow { values })
    }

    /// δ0*: `(δ0* X)(p) = −Σ_q X(p,q)`. The divergence is its negation.
    pub fn divergence_adjoint(&self, x: &EdgeFlow) -> NodeFunction {
        let mut out = vec![0.0; self.num_nodes()];
        for e in self.edges() {
            let v = x.values[e.id];
            out[e.from] -= v;
            out[e.to] += v;
        }
        out
    }

    /// D_m*: `(D_m* X)(p) = −Σ_q W^m(p,q) X(p,q)`.
    pub fn player_divergence(&self, m: usize, x: &EdgeFlow) -> Result<NodeFunction> {
        self.shape().check_player(m)?;
        let mut out = vec![0.0; self.num_nodes()];
        for e in self.player_edges(m) {
            let v = x.values[e.id];
            out[e.from] -= v;
            out[e.to] += v;
        }
        Ok(out)
    }

    /// δ1: `X(p,q) + X(q,r) + X(r,p)` on every triangle.
    pub fn curl(&self, x: &EdgeFlow) -> TriangleFlow {
        let values = self
            .triangles()
            .map(|t| {
                let [a, b, c] = t.nodes;
                x.get(self, a, b) + x.get(self, b, c) + x.get(self, c, a)
            })
            .collect();
        TriangleFlow { values }
    }

    /// Ψ(p,q,r) for an arbitrary vertex order, using the alternating rule.
    pub fn triangle_value(&self, psi: &TriangleFlow, p: usize, q: usize, r: usize) -> f64 {
        let sign = orientation_sign(p, q, r);
        if sign == 0.0 {
            return 0.0;
        }
        let mut sorted = [p, q, r];
        sorted.sort_unstable();
        self.triangles()
            .position(|t| t.nodes == sorted)
            .map_or(0.0, |i| sign * psi.values[i])
    }

    /// The pairwise comparison flow of a game: on an `m`-comparable pair,
    /// the gain of player `m` from moving `p → q`.
    pub fn pairwise_comparison(&self, game: &Game) -> Result<EdgeFlow> {
        if game.shape() != self.shape() {
            return Err(GameError::ShapeMismatch(
                "game and graph have different strategy counts".into(),
            ));
        }
        let mut values = vec![0.0; self.num_edges()];
        for e in self.edges() {
            let u = game.player_utilities(e.player);
            values[e.id] = u[e.to] - u[e.from];
        }
        Ok(EdgeFlow { values })
    }

    /// Δ0 applied matrix-free: degree times φ(p) minus the neighbour sum.
    pub fn laplacian_apply(&self, phi: &[f64]) -> Result<NodeFunction> {
        check_len(self, phi)?;
        let shape = self.shape();
        let mut out = vec![0.0; self.num_nodes()];
        for m in 0..shape.num_players() {
            let h = shape.count(m);
            for block in 0..shape.opponent_profiles(m) {
                let sum: f64 = (0..h).map(|a| phi[shape.node_in_block(m, block, a)]).sum();
                for a in 0..h {
                    let p = shape.node_in_block(m, block, a);
                    // (h-1)·φ(p) − Σ_{b≠a} φ(q_b)
                    out[p] += h as f64 * phi[p] - sum;
                }
            }
        }
        Ok(out)
    }

    /// Δ0,m = D_m* D_m, the Laplacian of player `m`'s subgraph.
    pub fn laplacian_player_apply(&self, m: usize, phi: &[f64]) -> Result<NodeFunction> {
        let x = self.player_gradient(m, phi)?;
        self.player_divergence(m, &x)
    }

    /// Π_m u.
    pub fn project_player(&self, m: usize, u: &[f64]) -> Result<NodeFunction> {
        self.shape().check_player(m)?;
        check_len(self, u)?;
        Ok(project_player(self.shape(), m, u))
    }

    /// ⟨f, g⟩_0 = Σ_p f(p) g(p).
    pub fn inner_nodes(&self, f: &[f64], g: &[f64]) -> f64 {
        f.iter().zip(g).map(|(a, b)| a * b).sum()
    }

    /// ⟨X, Y⟩_1 = ½ Σ over ordered comparable pairs of X(p,q) Y(p,q).
    pub fn inner_edges(&self, x: &EdgeFlow, y: &EdgeFlow) -> f64 {
        let mut total = 0.0;
        for p in 0..self.num_nodes() {
            for (q, _) in self.neighbors(p) {
                total += x.get(self, p, q) * y.get(self, p, q);
            }
        }
        0.5 * total
    }

    /// ⟨Ψ1, Ψ2⟩_2 = Σ over triangles.
    pub fn inner_triangles(&self, a: &TriangleFlow, b: &TriangleFlow) -> f64 {
        a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum()
    }

    /// Graphviz rendering of a flow: one arrow per nonzero edge pointing in
    /// the direction of positive flow, labelled with the magnitude.
    pub fn to_dot<F>(&self, x: &EdgeFlow, node_label: F, tol: f64) -> String
    where
        F: Fn(usize) -> String,
    {
        let mut out = String::from("digraph flow {\n");
        for p in 0..self.num_nodes() {
            let _ = writeln!(out, "  n{p} [label=\"{}\"];", escape(&node_label(p)));
        }
        for e in self.edges() {
            let v = x.values[e.id];
            if v.abs() <= tol {
                continue;
            }
            let (from, to) = if v > 0.0 { (e.from, e.to) } else { (e.to, e.from) };
            let _ = writeln!(out, "  n{from} -> n{to} [label=\"{}\"];", format_number(v.abs()));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Rounds to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Shortest decimal rendering of `v` after rounding to 12 significant
/// digits.
pub fn format_number(v: f64) -> String {
    let r = round_sig(v);
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn graph(h: &[usize]) -> GameGraph {
        GameGraph::new(h).unwrap()
    }

    #[test]
    fn battle_of_sexes_flow_labels() {
        let bos = catalog::battle_of_sexes();
        let g = graph(&[2, 2]);
        let x = g.pairwise_comparison(&bos).unwrap();
        // nodes: (O,O)=0 (O,F)=1 (F,O)=2 (F,F)=3
        assert_eq!(x.get(&g, 2, 0), 3.0);
        assert_eq!(x.get(&g, 1, 0), 2.0);
        assert_eq!(x.get(&g, 1, 3), 2.0);
        assert_eq!(x.get(&g, 2, 3), 3.0);
        assert_eq!(x.get(&g, 0, 2), -3.0);
        assert_eq!(x.get(&g, 0, 3), 0.0);
    }

    #[test]
    fn road_sharing_flow_edge() {
        let g = graph(&[2, 2, 2]);
        let x = g.pairwise_comparison(&catalog::road_sharing()).unwrap();
        assert_eq!(x.get(&g, 0, 4), 4.0);
        let z = Game::zeros(g.shape());
        assert_eq!(g.pairwise_comparison(&z).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn gradient_examples() {
        let g = graph(&[2, 2]);
        assert_eq!(g.gradient(&[5.0; 4]).unwrap().max_abs(), 0.0);
        let x = g.gradient(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(x.get(&g, 0, 1), 1.0);
        assert_eq!(x.get(&g, 0, 2), 2.0);
        assert_eq!(x.get(&g, 1, 3), 2.0);
        assert_eq!(x.get(&g, 3, 2), -1.0);
    }

    #[test]
    fn rps_potential_reproduces_potential_flows() {
        let (x, y, z) = (2.0, 1.0, 3.0);
        let pot = catalog::generalized_rps_potential(x, y, z);
        // row payoffs depend only on the row, column payoffs only on the
        // column, so φ(i,j) = v[i] + v[j] is an exact potential
        let v = [y - x, x - z, z - y];
        let phi: Vec<f64> = (0..9).map(|idx| v[idx / 3] + v[idx % 3]).collect();
        let g = graph(&[3, 3]);
        let grad = g.gradient(&phi).unwrap();
        let flow = g.pairwise_comparison(&pot).unwrap();
        assert!(grad.sub(&flow).max_abs() < 1e-12);
    }

    #[test]
    fn divergence_examples() {
        let g = graph(&[2, 2]);
        assert!(g.divergence_adjoint(&EdgeFlow::zeros(&g)).iter().all(|&v| v == 0.0));
        let phi = [0.0, 1.0, 2.0, 3.0];
        let d = g.divergence_adjoint(&g.gradient(&phi).unwrap());
        assert_eq!(d, g.laplacian_apply(&phi).unwrap());

        // matching pennies is harmonic: at each node the two outgoing flows
        // cancel. Direct summation at every node as oracle.
        let mp = catalog::matching_pennies();
        let x = g.pairwise_comparison(&mp).unwrap();
        for p in 0..4 {
            let manual: f64 = -g.neighbors(p).map(|(q, _)| x.get(&g, p, q)).sum::<f64>();
            assert_eq!(manual, 0.0);
        }
        assert!(g.divergence_adjoint(&x).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn curl_examples() {
        let g = graph(&[3, 1]);
        assert_eq!(g.num_triangles(), 1);
        // X(0,1) = X(1,2) = X(2,0) = 1
        let x = EdgeFlow::from_values(&g, vec![0.0; 3]).unwrap();
        let mut vals = x.values().to_vec();
        let (e01, s01) = g.edge_id(0, 1).unwrap();
        let (e12, s12) = g.edge_id(1, 2).unwrap();
        let (e20, s20) = g.edge_id(2, 0).unwrap();
        vals[e01] = s01;
        vals[e12] = s12;
        vals[e20] = s20;
        let x = EdgeFlow::from_values(&g, vals).unwrap();
        let c = g.curl(&x);
        assert_eq!(c.values(), &[3.0]);
        assert_eq!(g.triangle_value(&c, 1, 2, 0), 3.0);
        assert_eq!(g.triangle_value(&c, 1, 0, 2), -3.0);

        let g33 = graph(&[3, 3]);
        let phi: Vec<f64> = (0..9).map(|i| (i * i) as f64 * 0.37).collect();
        assert!(g33.curl(&g33.gradient(&phi).unwrap()).max_abs() < 1e-12);
        let rps = catalog::generalized_rps(1.0, 2.0, 0.5);
        assert!(g33.curl(&g33.pairwise_comparison(&rps).unwrap()).max_abs() < 1e-12);
    }

    #[test]
    fn player_operator_identities() {
        let g = graph(&[2, 3]);
        let phi = [0.3, -1.2, 2.5, 0.7, 4.1, -0.9];
        assert_eq!(g.player_gradient(0, &[1.0; 6]).unwrap().max_abs(), 0.0);
        let sum = g
            .player_gradient(0, &phi)
            .unwrap()
            .add(&g.player_gradient(1, &phi).unwrap());
        assert!(sum.sub(&g.gradient(&phi).unwrap()).max_abs() < 1e-15);
        for (k, m) in [(0, 1), (1, 0)] {
            let cross = g
                .player_divergence(k, &g.player_gradient(m, &phi).unwrap())
                .unwrap();
            assert!(cross.iter().all(|v| v.abs() < 1e-15));
        }
        let x = g.gradient(&phi).unwrap();
        let split = g
            .restrict_to_player(0, &x)
            .unwrap()
            .add(&g.restrict_to_player(1, &x).unwrap());
        assert_eq!(split, x);
        assert!(matches!(
            g.player_gradient(2, &phi),
            Err(GameError::InvalidPlayer { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let shape = Shape::new(&[2, 2]).unwrap();
        let bos = catalog::battle_of_sexes();
        let row = project_player(&shape, 0, bos.player_utilities(0));
        // explicit mean removal of each column of A = [[3,0],[0,2]]
        assert_eq!(row, vec![1.5, -1.0, -1.5, 1.0]);

        let shape = Shape::new(&[3, 2]).unwrap();
        // constant over player 0's strategies for each column → kernel
        let block_const = [1.0, 7.0, 1.0, 7.0, 1.0, 7.0];
        assert!(project_player(&shape, 0, &block_const).iter().all(|v| v.abs() < 1e-15));

        let u = [0.4, -2.0, 3.3, 1.1, 0.0, 5.5];
        for m in 0..2 {
            let once = project_player(&shape, m, &u);
            let twice = project_player(&shape, m, &once);
            for (a, b) in once.iter().zip(&twice) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        let g = graph(&[2, 2]);
        assert!(g.laplacian_apply(&[2.0; 4]).unwrap().iter().all(|v| v.abs() < 1e-15));
        for p in 0..4 {
            let mut e = vec![0.0; 4];
            e[p] = 1.0;
            assert_eq!(g.laplacian_apply(&e).unwrap()[p], 2.0);
        }
        let g = graph(&[2, 3]);
        let phi = [1.0, -0.5, 2.0, 0.25, 3.0, -4.0];
        for m in 0..2 {
            let lap = g.laplacian_player_apply(m, &phi).unwrap();
            let h = g.shape().count(m) as f64;
            let proj = g.project_player(m, &phi).unwrap();
            for (a, b) in lap.iter().zip(&proj) {
                assert!((a - h * b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dot_export_orients_by_sign() {
        let g = graph(&[2, 2]);
        let bos = catalog::battle_of_sexes();
        let x = g.pairwise_comparison(&bos).unwrap();
        let dot = g.to_dot(&x, |p| bos.profile_label(p), 1e-12);
        assert!(dot.contains("n2 -> n0 [label=\"3\"]"));
        assert!(dot.contains("n1 -> n0 [label=\"2\"]"));
        assert!(dot.contains("n1 -> n3 [label=\"2\"]"));
        assert!(dot.contains("n2 -> n3 [label=\"3\"]"));
        assert!(dot.contains("n0 [label=\"(O,O)\"]"));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(3.0), "3");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(round_sig(2.0 / 3.0), 0.666666666667);
    }
}
