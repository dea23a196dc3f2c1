//! Brute-force reference values for the spin-1 counterexample.
//!
//! Everything here is plain `f64` arithmetic on explicit 3x3 and 9x9 arrays.
//! The spin-1 eigenvectors are written in closed form rather than obtained
//! from an eigensolver, and probabilities come from explicit Kronecker
//! products and full matrix traces, so nothing is shared with the library.

use std::f64::consts::FRAC_1_SQRT_2;

pub type M3 = [[f64; 3]; 3];
pub type M9 = [[f64; 9]; 9];

pub fn spin1(alpha: f64) -> M3 {
    let (s, c) = alpha.sin_cos();
    let h = s * FRAC_1_SQRT_2;
    [[c, h, 0.0], [h, 0.0, h], [0.0, h, -c]]
}

/// Eigenpairs of `spin1(alpha)` for eigenvalues `+1, 0, -1`.
pub fn spin1_eigenvectors(alpha: f64) -> [(f64, [f64; 3]); 3] {
    let (s, c) = alpha.sin_cos();
    let h = s * FRAC_1_SQRT_2;
    [
        (1.0, [(1.0 + c) / 2.0, h, (1.0 - c) / 2.0]),
        (0.0, [-h, c, h]),
        (-1.0, [(1.0 - c) / 2.0, -h, (1.0 + c) / 2.0]),
    ]
}

fn outer3(v: &[f64; 3]) -> M3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = v[i] * v[j];
        }
    }
    m
}

fn kron(a: &M3, b: &M3) -> M9 {
    let mut m = [[0.0; 9]; 9];
    for i1 in 0..3 {
        for j1 in 0..3 {
            for i2 in 0..3 {
                for j2 in 0..3 {
                    m[i1 * 3 + i2][j1 * 3 + j2] = a[i1][j1] * b[i2][j2];
                }
            }
        }
    }
    m
}

fn trace_of_product(a: &M9, b: &M9) -> f64 {
    let mut t = 0.0;
    for i in 0..9 {
        for k in 0..9 {
            t += a[i][k] * b[k][i];
        }
    }
    t
}

pub const VEC_E1: [f64; 3] = [1.0, 0.0, 0.0];
pub const VEC_HALF: [f64; 3] = [0.5, FRAC_1_SQRT_2, 0.5];

/// `rho = 1/2 P_{e1 (x) e1} + 1/2 P_{v (x) v}` as an explicit 9x9 array.
pub fn counterexample_rho() -> M9 {
    let a = kron(&outer3(&VEC_E1), &outer3(&VEC_E1));
    let b = kron(&outer3(&VEC_HALF), &outer3(&VEC_HALF));
    let mut rho = [[0.0; 9]; 9];
    for i in 0..9 {
        for j in 0..9 {
            rho[i][j] = 0.5 * a[i][j] + 0.5 * b[i][j];
        }
    }
    rho
}

/// Joint table `P[i][j] = tr(rho (P_i(alpha) (x) P_j(beta)))`, outcomes ordered
/// `+1, 0, -1`.
pub fn joint_table(rho: &M9, alpha: f64, beta: f64) -> [[f64; 3]; 3] {
    let ea = spin1_eigenvectors(alpha);
    let eb = spin1_eigenvectors(beta);
    let mut t = [[0.0; 3]; 3];
    for (i, (_, va)) in ea.iter().enumerate() {
        for (j, (_, vb)) in eb.iter().enumerate() {
            t[i][j] = trace_of_product(rho, &kron(&outer3(va), &outer3(vb)));
        }
    }
    t
}

const VALUES: [f64; 3] = [1.0, 0.0, -1.0];

/// `sum_ij i j P(i, j)`.
pub fn correlation(rho: &M9, alpha: f64, beta: f64) -> f64 {
    let t = joint_table(rho, alpha, beta);
    let mut e = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            e += VALUES[i] * VALUES[j] * t[i][j];
        }
    }
    e
}

pub fn pass_probability(rho: &M9, alpha: f64, beta: f64) -> f64 {
    let t = joint_table(rho, alpha, beta);
    let mut p = 0.0;
    for i in [0, 2] {
        for j in [0, 2] {
            p += t[i][j];
        }
    }
    p
}

/// `(E(a,b), E(a,b'), E(a',b), E(a',b'))` and the CHSH combination.
pub fn chsh(rho: &M9, angles: [f64; 4]) -> ([f64; 4], f64) {
    let [a, ap, b, bp] = angles;
    let e = [
        correlation(rho, a, b),
        correlation(rho, a, bp),
        correlation(rho, ap, b),
        correlation(rho, ap, bp),
    ];
    (e, e[0] + e[1] + e[2] - e[3])
}

/// Outcome probabilities `(+1, 0, -1)` for the `+1` eigenstate of the spin
/// component at angle `phi`, measured at angle `phi + theta`:
/// `((1+cos)/2)^2, sin^2/2, ((1-cos)/2)^2`.
pub fn coherent_marginal(theta: f64) -> [f64; 3] {
    let (s, c) = theta.sin_cos();
    [((1.0 + c) / 2.0).powi(2), s * s / 2.0, ((1.0 - c) / 2.0).powi(2)]
}

/// Pass probability and correlation for the counterexample mixture from
/// single-particle marginals alone. The two components are the `+1`
/// eigenstates at angles 0 and pi/2, each weight 1/2, on both sides.
pub fn closed_form_pair(alpha: f64, beta: f64) -> (f64, f64) {
    let mut pass = 0.0;
    let mut corr = 0.0;
    for phi in [0.0, std::f64::consts::FRAC_PI_2] {
        let pa = coherent_marginal(alpha - phi);
        let pb = coherent_marginal(beta - phi);
        pass += 0.5 * (1.0 - pa[1]) * (1.0 - pb[1]);
        corr += 0.5 * (pa[0] - pa[2]) * (pb[0] - pb[2]);
    }
    (pass, corr)
}
