//! Exact results for `H = -sum z z + b sum x` from the free-fermion
//! solution: single-mode energies are `2 eps(k)` with
//! `eps(k) = sqrt(1 + b^2 - 2 b cos k)`.

use std::f64::consts::PI;

use super::check_temperature;
use super::quad::integrate;
use crate::error::{Error, Result};

const QUAD_TOL: f64 = 1e-13;

fn eps(b: f64, k: f64) -> f64 {
    (1.0 + b * b - 2.0 * b * k.cos()).max(0.0).sqrt()
}

/// `(1/2pi) int_0^{2pi} g(k) dk` for `g` symmetric about `pi`.
fn brillouin_mean(g: impl Fn(f64) -> f64) -> f64 {
    integrate(g, 0.0, PI, QUAD_TOL) / PI
}

/// `ln(2 cosh x)` without overflow.
fn ln_2cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// `ln|2 sinh x|`, `-inf` at zero.
fn ln_2sinh_abs(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return f64::NEG_INFINITY;
    }
    a + (-(-2.0 * a).exp()).ln_1p()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("finite chain length must be even and positive, got {n}")));
    }
    Ok(())
}

/// Momenta of the antiperiodic (even parity) sector `(2m+1) pi / N`.
fn ns_momenta(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |m| (2 * m + 1) as f64 * PI / n as f64)
}

/// Signed mode energies of the periodic (odd parity) sector `2 pi m / N`.
/// The `k = 0` mode keeps the sign of `1 - b`.
fn r_energies(b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |m| {
        if m == 0 {
            1.0 - b
        } else {
            eps(b, 2.0 * PI * m as f64 / n as f64)
        }
    })
}

/// Ground-state energy per site. Without `n` this is the infinite chain
/// `-(1/2pi) int eps(k) dk`; with an even `n` it is the periodic chain of
/// `n` sites.
pub fn ising_ground(b: f64, n: Option<usize>) -> Result<f64> {
    if !b.is_finite() {
        return Err(Error::InvalidArgument("field must be finite".into()));
    }
    match n {
        None => Ok(-brillouin_mean(|k| eps(b, k))),
        Some(n) => {
            check_n(n)?;
            Ok(-ns_momenta(n).map(|k| eps(b, k)).sum::<f64>() / n as f64)
        }
    }
}

/// Free energy per site of the infinite chain,
/// `-(t/2pi) int ln(2 cosh(eps/t)) dk`.
pub fn ising_free(b: f64, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(-t * brillouin_mean(|k| ln_2cosh(eps(b, k) / t)))
}

/// Internal energy per site at temperature `t`. Without `n`: the infinite
/// chain, `-(1/2pi) int eps tanh(eps/t) dk`. With an even `n`: the periodic
/// chain, equal to `Tr(H exp(-H/t)) / (n Tr exp(-H/t))`.
pub fn ising_thermal(b: f64, t: f64, n: Option<usize>) -> Result<f64> {
    check_temperature(t)?;
    match n {
        None => Ok(-brillouin_mean(|k| {
            let e = eps(b, k);
            e * (e / t).tanh()
        })),
        Some(n) => {
            check_n(n)?;
            Ok(finite_internal_energy(b, t, n))
        }
    }
}

/// `Z = (C_ns + S_ns + C_r + s S_r) / 2` with `C = prod 2cosh(beta e)`,
/// `S = prod 2sinh(beta e)`; `s` carries the sign of the signed `k = 0`
/// energy of the periodic sector. Evaluated in log space.
fn finite_internal_energy(b: f64, t: f64, n: usize) -> f64 {
    let beta = 1.0 / t;
    let ns: Vec<f64> = ns_momenta(n).map(|k| eps(b, k)).collect();
    let r: Vec<f64> = r_energies(b, n).collect();

    // d/dbeta ln(2 cosh(beta e)) = e tanh(beta e), ln|2 sinh| gives e coth(beta e)
    let cosh_part = |es: &[f64]| -> (f64, f64) {
        let l = es.iter().map(|&e| ln_2cosh(beta * e)).sum();
        let dl = es.iter().map(|&e| e * (beta * e).tanh()).sum();
        (l, dl)
    };
    let sinh_part = |es: &[f64]| -> (f64, f64, f64) {
        let sign = es.iter().map(|&e| e.signum()).product::<f64>();
        if es.contains(&0.0) {
            return (0.0, f64::NEG_INFINITY, 0.0);
        }
        let l = es.iter().map(|&e| ln_2sinh_abs(beta * e)).sum();
        let dl = es.iter().map(|&e| e_coth(e, beta)).sum();
        (sign, l, dl)
    };

    let (l1, d1) = cosh_part(&ns);
    let (s2, l2, d2) = sinh_part(&ns);
    let (l3, d3) = cosh_part(&r);
    let (s4, l4, d4) = sinh_part(&r);
    let parts = [(1.0, l1, d1), (s2, l2, d2), (1.0, l3, d3), (s4, l4, d4)];
    let lmax = parts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut z = 0.0;
    let mut dz = 0.0;
    for (s, l, d) in parts {
        if l == f64::NEG_INFINITY {
            continue;
        }
        let w = s * (l - lmax).exp();
        z += w;
        dz += w * d;
    }
    -dz / z / n as f64
}

/// `e coth(beta e)` with its `1/beta` limit at small arguments.
fn e_coth(e: f64, beta: f64) -> f64 {
    let x = beta * e;
    if x.abs() < 1e-8 {
        1.0 / beta
    } else {
        e / x.tanh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{ising, thstate, Boundary};
    use crate::dirac::ex;
    use crate::operator::Storage;
    use crate::util::mineig;

    #[test]
    fn infinite_chain_ground() {
        assert!((ising_ground(0.0, None).unwrap() + 1.0).abs() < 1e-12);
        assert!((ising_ground(1.0, None).unwrap() + 4.0 / PI).abs() < 1e-10);
        // large field: the x-polarized state dominates
        assert!((ising_ground(50.0, None).unwrap() + 50.0).abs() < 0.01);
        // b -> -b is a symmetry (rotate every spin by pi about z)
        assert!((ising_ground(0.7, None).unwrap() - ising_ground(-0.7, None).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn finite_ground_matches_diagonalization() {
        for n in [2, 4, 6, 8] {
            for b in [0.0, 0.3, 1.0, 1.7, -2.5] {
                let h = ising(b, n, Boundary::Periodic, Storage::Dense).unwrap();
                let exact = mineig(&h).unwrap() / n as f64;
                let closed = ising_ground(b, Some(n)).unwrap();
                assert!((exact - closed).abs() < 1e-10, "n={n} b={b}: {exact} vs {closed}");
            }
        }
        assert!(ising_ground(1.0, Some(5)).is_err());
        assert!(ising_ground(1.0, Some(0)).is_err());
    }

    #[test]
    fn finite_thermal_matches_thermal_state() {
        for n in [2, 4, 6] {
            for b in [0.0, 0.5, 1.0, 2.0, -0.8] {
                let h = ising(b, n, Boundary::Periodic, Storage::Dense).unwrap();
                for t in [0.05, 0.5, 1.0, 2.0, 30.0] {
                    let rho = thstate(&h, t).unwrap();
                    let exact = ex(&h, &rho).unwrap().re / n as f64;
                    let closed = ising_thermal(b, t, Some(n)).unwrap();
                    assert!((exact - closed).abs() < 1e-10, "n={n} b={b} t={t}: {exact} vs {closed}");
                }
            }
        }
    }

    #[test]
    fn thermal_limits() {
        for b in [0.5, 1.0, 2.0] {
            let g = ising_ground(b, None).unwrap();
            assert!((ising_free(b, 1e-3).unwrap() - g).abs() < 1e-6);
            assert!((ising_thermal(b, 1e-3, None).unwrap() - g).abs() < 1e-6);
        }
        // high temperature: u ~ -Tr(H^2)/(N 2^N t) = -(1 + b^2)/t
        let hot = ising_thermal(0.5, 100.0, None).unwrap();
        assert!((hot + 1.25 / 100.0).abs() < 1e-5);
        assert!(hot.abs() < 1.3e-2);
        assert!(ising_free(1.0, 0.0).is_err());
        assert!(ising_thermal(1.0, -1.0, Some(4)).is_err());
    }

    #[test]
    fn internal_energy_is_free_energy_derivative() {
        // u = d(beta f)/d(beta)
        let (b, t) = (0.8, 0.7);
        let h = 1e-4;
        let bf = |beta: f64| beta * ising_free(b, 1.0 / beta).unwrap();
        let beta = 1.0 / t;
        let numeric = (bf(beta + h) - bf(beta - h)) / (2.0 * h);
        assert!((numeric - ising_thermal(b, t, None).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn internal_energy_monotone_in_temperature() {
        for b in [0.5, 1.0, 2.0] {
            let mut prev = f64::NEG_INFINITY;
            for i in 1..=60 {
                let u = ising_thermal(b, 0.05 * i as f64, None).unwrap();
                assert!(u >= prev - 1e-12);
                prev = u;
            }
        }
    }
}
