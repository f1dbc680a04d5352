//! Ground energies per site of classical spin chains: every spin is a unit
//! vector and the chain alternates between two sublattice directions (a
//! uniform chain is the special case of equal directions).

use std::f64::consts::PI;

use super::XYParams;

type Spin = [f64; 3];

fn spin(theta: f64, phi: f64) -> Spin {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Minimizes `energy(sA, sB)` over pairs of unit vectors: a coarse angle
/// grid followed by a shrinking pattern search from the best grid points.
fn minimize_two_sublattice(energy: impl Fn(&Spin, &Spin) -> f64) -> f64 {
    let eval = |p: &[f64; 4]| energy(&spin(p[0], p[1]), &spin(p[2], p[3]));
    const GRID: usize = 16;
    let dt = PI / (GRID - 1) as f64;
    let dp = 2.0 * PI / GRID as f64;
    let mut candidates: Vec<(f64, [f64; 4])> = Vec::with_capacity(GRID.pow(4));
    for a in 0..GRID {
        for b in 0..GRID {
            for c in 0..GRID {
                for d in 0..GRID {
                    let p = [a as f64 * dt, b as f64 * dp, c as f64 * dt, d as f64 * dp];
                    candidates.push((eval(&p), p));
                }
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut best = f64::INFINITY;
    for (mut value, mut p) in candidates.into_iter().take(12) {
        let mut step = dp;
        while step > 1e-11 {
            let mut improved = false;
            for i in 0..4 {
                for s in [step, -step] {
                    let mut q = p;
                    q[i] += s;
                    let v = eval(&q);
                    if v < value {
                        value = v;
                        p = q;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best = best.min(value);
    }
    best
}

/// Classical counterpart of `-sum z z + b sum x`:
/// `min over sA, sB of -zA zB + b (xA + xB)/2`.
pub fn ising_classical_ground(b: f64) -> f64 {
    minimize_two_sublattice(|a, s| -a[2] * s[2] + 0.5 * b * (a[0] + s[0]))
}

/// Classical counterpart of the XY chain in a field along x:
/// `min over sA, sB of jx xA xB + jy yA yB + b (xA + xB)/2`.
pub fn xy_classical_ground(p: &XYParams) -> f64 {
    minimize_two_sublattice(|a, s| p.jx * a[0] * s[0] + p.jy * a[1] * s[1] + 0.5 * p.b * (a[0] + s[0]))
}
