//! Euler numbers of `GL₂⁺(ℝ)` surface-group representations from circle
//! lifts: each matrix acts on ray angles, commutators of lifts are canonical,
//! and the product of the handle commutators is a translation by `2π·e`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub type Mat2 = [[f64; 2]; 2];

type Map = Box<dyn Fn(f64) -> f64>;

fn apply(m: &Mat2, (x, y): (f64, f64)) -> (f64, f64) {
    (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)
}

fn inverse(m: &Mat2) -> Mat2 {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

/// Counter-clockwise angle from `u` to `w`; in `(0, π)` for the steps below.
fn ccw(u: (f64, f64), w: (f64, f64)) -> f64 {
    (u.0 * w.1 - u.1 * w.0).atan2(u.0 * w.0 + u.1 * w.1)
}

/// The lift of `m` to `ℝ` sending `0` into `(−π, π]`. The image angle is
/// tracked in quarter turns: an orientation-preserving map sends two rays
/// less than `π` apart to two rays less than `π` apart, so every increment
/// is unambiguous.
fn lift(m: Mat2) -> Map {
    Box::new(move |theta: f64| {
        let turns = (theta / TAU).floor();
        let r = theta - turns * TAU;
        let mut prev = apply(&m, (1.0, 0.0));
        let mut acc = prev.1.atan2(prev.0);
        let mut phi = 0.0;
        while phi < r {
            let next = (phi + FRAC_PI_2).min(r);
            let dir = apply(&m, (next.cos(), next.sin()));
            acc += ccw(prev, dir);
            prev = dir;
            phi = next;
        }
        acc + turns * TAU
    })
}

/// The inverse function of `lift(m)`.
fn inverse_lift(m: Mat2) -> Map {
    let forward = lift(m);
    let back = lift(inverse(&m));
    let shift = -TAU * (forward(back(0.0)) / TAU).round();
    Box::new(move |theta| back(theta) + shift)
}

fn compose(outer: Map, inner: Map) -> Map {
    Box::new(move |t| outer(inner(t)))
}

/// `b̃ ã⁻¹ b̃⁻¹ ã`, which does not depend on the chosen lifts.
fn commutator(a: Mat2, b: Mat2) -> Map {
    compose(lift(b), compose(inverse_lift(a), compose(inverse_lift(b), lift(a))))
}

/// Generators `[a_0, b_0, a_1, b_1, …]` satisfying `K_{g−1} ⋯ K_0 = 1` with
/// `K_i = b_i a_i⁻¹ b_i⁻¹ a_i`. Returns the translation number of the lifted
/// relator, probed at a few angles, and its distance from an integer.
pub fn translation_number(gens: &[Mat2]) -> (i64, f64) {
    let mut total: Map = Box::new(|t| t);
    for pair in gens.chunks(2) {
        total = compose(commutator(pair[0], pair[1]), total);
    }
    let probes: Vec<f64> = [0.0, 1.0, 2.5, 4.0].iter().map(|&t| (total(t) - t) / TAU).collect();
    let t = probes[0].round();
    let err = probes.iter().map(|p| (p - t).abs()).fold(0.0, f64::max);
    (t as i64, err)
}

pub fn rotation(phi: f64) -> Mat2 {
    [[phi.cos(), -phi.sin()], [phi.sin(), phi.cos()]]
}

/// Sanity checks of the oracle on representations with known answers.
pub fn self_check() -> bool {
    let lifts_are_equivariant = {
        let f = lift([[2.0, 1.0], [1.0, 1.0]]);
        (f(1.0 + TAU) - f(1.0) - TAU).abs() < 1e-12
    };
    let inverse_is_exact = {
        let m = [[3.0, -1.0], [5.0, 0.5]];
        let (f, g) = (lift(m), inverse_lift(m));
        [0.3, 2.0, -4.0].iter().all(|&t| (f(g(t)) - t).abs() < 1e-9)
    };
    // commuting generators: the trivial and rotation representations
    let abelian = translation_number(&[rotation(0.7), rotation(2.9), rotation(PI), [[2.0, 0.0], [0.0, 0.5]]]);
    lifts_are_equivariant && inverse_is_exact && abelian.0 == 0 && abelian.1 < 1e-9
}
