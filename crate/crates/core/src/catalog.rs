//! Small named games used throughout the tests, the acceptance suite and the
//! CLI sample data.

use crate::game::{Game, Shape};

fn labelled(game: Game, names: &[&str], labels: &[&[&str]]) -> Game {
    let names = names.iter().map(|s| s.to_string()).collect();
    let labels = labels
        .iter()
        .map(|l| l.iter().map(|s| s.to_string()).collect())
        .collect();
    game.with_labels(names, labels).expect("catalog labels match shape")
}

fn bimatrix(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> Game {
    let a: Vec<Vec<f64>> = a.iter().map(|r| r.to_vec()).collect();
    let b: Vec<Vec<f64>> = b.iter().map(|r| r.to_vec()).collect();
    Game::bimatrix(&a, &b).expect("2x2 bimatrix")
}

/// Battle of the sexes with strategies O and F.
pub fn battle_of_sexes() -> Game {
    labelled(
        bimatrix([[3.0, 0.0], [0.0, 2.0]], [[2.0, 0.0], [0.0, 3.0]]),
        &["row", "col"],
        &[&["O", "F"], &["O", "F"]],
    )
}

/// Battle of the sexes where the row player earns one more whenever the
/// column player picks O. Strategically equivalent to [`battle_of_sexes`].
pub fn modified_battle_of_sexes() -> Game {
    labelled(
        bimatrix([[4.0, 0.0], [1.0, 2.0]], [[2.0, 0.0], [0.0, 3.0]]),
        &["row", "col"],
        &[&["O", "F"], &["O", "F"]],
    )
}

pub fn matching_pennies() -> Game {
    labelled(
        bimatrix([[1.0, -1.0], [-1.0, 1.0]], [[-1.0, 1.0], [1.0, -1.0]]),
        &["row", "col"],
        &[&["H", "T"], &["H", "T"]],
    )
}

/// Zero-sum 2x2 game that is also an exact potential game.
pub fn zero_sum_potential() -> Game {
    labelled(
        bimatrix([[0.0, 1.0], [-1.0, 0.0]], [[0.0, -1.0], [1.0, 0.0]]),
        &["row", "col"],
        &[&["x", "y"], &["a", "b"]],
    )
}

/// Potential function of [`zero_sum_potential`] in profile order.
pub fn zero_sum_potential_phi() -> Vec<f64> {
    vec![2.0, 1.0, 1.0, 0.0]
}

fn rps_labels(game: Game) -> Game {
    labelled(game, &["row", "col"], &[&["R", "P", "S"], &["R", "P", "S"]])
}

fn bimatrix3(a: [[f64; 3]; 3], b: [[f64; 3]; 3]) -> Game {
    let a: Vec<Vec<f64>> = a.iter().map(|r| r.to_vec()).collect();
    let b: Vec<Vec<f64>> = b.iter().map(|r| r.to_vec()).collect();
    rps_labels(Game::bimatrix(&a, &b).expect("3x3 bimatrix"))
}

/// Rock-paper-scissors with asymmetric stakes `x`, `y`, `z`; the classic
/// game is `x = y = z = 1/3`.
pub fn generalized_rps(x: f64, y: f64, z: f64) -> Game {
    let a = [
        [0.0, -3.0 * x, 3.0 * y],
        [3.0 * x, 0.0, -3.0 * z],
        [-3.0 * y, 3.0 * z, 0.0],
    ];
    let mut b = a;
    for row in b.iter_mut() {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
    bimatrix3(a, b)
}

/// Closed-form nonstrategic component of [`generalized_rps`].
pub fn generalized_rps_nonstrategic(x: f64, y: f64, z: f64) -> Game {
    let col = [x - y, z - x, y - z];
    let mut a = [[0.0; 3]; 3];
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] = col[j];
            b[i][j] = col[i];
        }
    }
    bimatrix3(a, b)
}

/// Closed-form potential component of [`generalized_rps`].
pub fn generalized_rps_potential(x: f64, y: f64, z: f64) -> Game {
    let v = [y - x, x - z, z - y];
    let mut a = [[0.0; 3]; 3];
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] = v[i];
            b[i][j] = v[j];
        }
    }
    bimatrix3(a, b)
}

/// Closed-form harmonic component of [`generalized_rps`].
pub fn generalized_rps_harmonic(x: f64, y: f64, z: f64) -> Game {
    let s = x + y + z;
    let a = [[0.0, -s, s], [s, 0.0, -s], [-s, s, 0.0]];
    let mut b = a;
    for row in b.iter_mut() {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
    bimatrix3(a, b)
}

/// Three players `s`, `d1`, `d2` each pick road 0 or 1. `s` loses 2 for
/// every driver on its road, `d1` loses 1 when sharing with `d2`, and `d2`
/// gains 1 when sharing with `d1`.
pub fn road_sharing() -> Game {
    let shape = Shape::new(&[2, 2, 2]).expect("2x2x2");
    let mut u = vec![vec![0.0; 8]; 3];
    for idx in shape.indices() {
        let p = shape.profile(idx);
        let (a, b, c) = (p.0[0], p.0[1], p.0[2]);
        u[0][idx] = -2.0 * ((a == b) as u8 + (a == c) as u8) as f64;
        let shared = if b == c { 1.0 } else { 0.0 };
        u[1][idx] = -shared;
        u[2][idx] = shared;
    }
    let game = Game::from_shape(shape, u).expect("road-sharing utilities");
    labelled(game, &["s", "d1", "d2"], &[&["0", "1"], &["0", "1"], &["0", "1"]])
}

/// Three players on a directed cycle: player i earns -1 when matching its
/// successor's strategy and 1 otherwise.
pub fn cyclic_three_player() -> Game {
    let shape = Shape::new(&[2, 2, 2]).expect("2x2x2");
    let mut u = vec![vec![0.0; 8]; 3];
    for idx in shape.indices() {
        let p = shape.profile(idx);
        for (m, um) in u.iter_mut().enumerate() {
            let next = (m + 1) % 3;
            um[idx] = if p.0[m] == p.0[next] { -1.0 } else { 1.0 };
        }
    }
    let game = Game::from_shape(shape, u).expect("cyclic utilities");
    labelled(game, &["1", "2", "3"], &[&["a", "b"], &["a", "b"], &["a", "b"]])
}

/// Two-player harmonic game on strategies {x,y} x {a,b,c} spanned by the
/// two basis games with weights `alpha` and `beta`.
pub fn harmonic_2x3(alpha: f64, beta: f64) -> Game {
    let a = vec![
        vec![3.0 * alpha, -3.0 * alpha + 3.0 * beta, -3.0 * beta],
        vec![-3.0 * alpha, 3.0 * alpha - 3.0 * beta, 3.0 * beta],
    ];
    let b = vec![
        vec![-2.0 * alpha, 2.0 * alpha - 2.0 * beta, 2.0 * beta],
        vec![2.0 * alpha, -2.0 * alpha + 2.0 * beta, -2.0 * beta],
    ];
    labelled(
        Game::bimatrix(&a, &b).expect("2x3 bimatrix"),
        &["row", "col"],
        &[&["x", "y"], &["a", "b", "c"]],
    )
}
