//! Explicit diameter bounds obtained by instantiating the volume-expansion
//! argument with concrete constants.
//!
//! A breadth-first search whose discovered volume grows by a factor
//! `1 + x` per iteration, starting from at least `vol_0` and stopping before
//! half of a set of volume at most `2^n`, runs for at most
//! `2/x * ln(2^n / vol_0)` iterations (using `ln(1+x) >= x/2` for
//! `0 <= x <= 1`). Two searches meet within that many iterations, so the
//! diameter is at most twice that.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Bounded,
    Unbounded,
}

fn check(n: usize, delta: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::param(format!("bounds need n >= 2, got {n}")));
    }
    if !(delta >= 1.0) {
        return Err(Error::param(format!("sub-determinant bound must be >= 1, got {delta}")));
    }
    Ok(())
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln(1 / (n! n^(n/2) entry^n))`, the log of the smallest possible volume of a
/// single spherical normal cone when every entry is at most `entry`.
fn ln_vertex_volume_lower(n: usize, entry: f64) -> f64 {
    let nf = n as f64;
    -(ln_factorial(n) + 0.5 * nf * nf.ln() + nf * entry.ln())
}

/// Lower bound `1 / (n! n^(n/2) D^n)` on the volume of `C_v ∩ B_n`: the
/// cone contains the simplex on `0` and its integral generators, scaled into
/// the ball by their largest norm `sqrt(n) D`.
pub fn vertex_volume_lower_bound(n: usize, entry: f64) -> f64 {
    ln_vertex_volume_lower(n, entry).exp()
}

/// Per-iteration growth factor of the discovered volume.
pub fn expansion_factor(n: usize, dockable_constant: f64, regime: Regime) -> f64 {
    let nf = n as f64;
    match regime {
        // isoperimetric lower bound sqrt(2n/pi) against the upper bound D^2 n^3
        Regime::Bounded => (2.0 / std::f64::consts::PI).sqrt() / (dockable_constant * nf.powf(2.5)),
        // the unbounded isoperimetric bound has constant 1
        Regime::Unbounded => 1.0 / (dockable_constant * nf.powi(3)),
    }
}

fn iterations(n: usize, expansion: f64, ln_vol0: f64) -> u64 {
    let ln_ratio = n as f64 * std::f64::consts::LN_2 - ln_vol0;
    (2.0 / expansion * ln_ratio).ceil() as u64
}

/// Largest number of BFS iterations before the discovered volume exceeds half.
pub fn max_iterations(n: usize, delta: f64, regime: Regime) -> Result<u64> {
    check(n, delta)?;
    let x = expansion_factor(n, delta * delta, regime);
    Ok(iterations(n, x, ln_vertex_volume_lower(n, delta)))
}

/// Diameter bound for polytopes, `O(D^2 n^3.5 log nD)` with explicit constants.
pub fn polytope_diameter_bound(n: usize, delta: f64) -> Result<u64> {
    Ok(2 * max_iterations(n, delta, Regime::Bounded)?)
}

/// Diameter bound for unbounded polyhedra, `O(D^2 n^4 log nD)`.
pub fn polyhedron_diameter_bound(n: usize, delta: f64) -> Result<u64> {
    Ok(2 * max_iterations(n, delta, Regime::Unbounded)?)
}

/// Bound using only the largest entry and the largest `(n-1)`-minor.
pub fn refined_diameter_bound(n: usize, delta1: f64, delta_nm1: f64, regime: Regime) -> Result<u64> {
    check(n, delta1)?;
    check(n, delta_nm1)?;
    let x = expansion_factor(n, delta1 * delta_nm1, regime);
    Ok(2 * iterations(n, x, ln_vertex_volume_lower(n, delta1)))
}

pub fn diameter_bound(n: usize, delta: f64, regime: Regime) -> Result<u64> {
    match regime {
        Regime::Bounded => polytope_diameter_bound(n, delta),
        Regime::Unbounded => polyhedron_diameter_bound(n, delta),
    }
}
