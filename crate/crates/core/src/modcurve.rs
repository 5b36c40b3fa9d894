//! Invariants of X_0(N): index, elliptic points, cusps, genus, and dimension
//! formulas for M_k(Gamma_0(N)).

use crate::arith::{divisors, gcd, is_squarefree, kronecker, phi, prime_divisors};

/// A cusp of X_0(N), represented as r/s with s | N, together with its width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspData {
    pub numer: u64,
    pub denom: u64,
    /// Width t = N / gcd(s^2, N).
    pub width: u64,
    /// The cusp at infinity, represented as 1/N.
    pub is_infinity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub level: u64,
    /// Index [SL_2(Z) : Gamma_0(N)].
    pub index: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub num_cusps: u64,
    pub genus: u64,
}

/// Index of Gamma_0(N) in SL_2(Z): N prod_{p|N} (1 + 1/p).
pub fn index_gamma0(n: u64) -> u64 {
    let mut idx = n;
    for p in prime_divisors(n) {
        idx = idx / p * (p + 1);
    }
    idx
}

/// Number of elliptic points of order 2.
pub fn nu2(n: u64) -> u64 {
    if n % 4 == 0 {
        return 0;
    }
    let mut v = 1u64;
    for p in prime_divisors(n) {
        if p == 2 {
            continue;
        }
        match kronecker(-1, p as i64) {
            1 => v *= 2,
            -1 => return 0,
            _ => {}
        }
    }
    v
}

/// Number of elliptic points of order 3.
pub fn nu3(n: u64) -> u64 {
    if n % 9 == 0 {
        return 0;
    }
    let mut v = 1u64;
    for p in prime_divisors(n) {
        if p == 3 {
            continue;
        }
        match kronecker(-3, p as i64) {
            1 => v *= 2,
            -1 => return 0,
            _ => {}
        }
    }
    v
}

/// Number of cusps: sum over d | N of phi(gcd(d, N/d)).
pub fn num_cusps_gamma0(n: u64) -> u64 {
    divisors(n).into_iter().map(|d| phi(gcd(d, n / d))).sum()
}

/// Width of the cusp with denominator s (s | N): N / gcd(s^2, N).
pub fn cusp_width(n: u64, s: u64) -> u64 {
    n / gcd(s * s, n)
}

/// Representatives r/s of the cusps, one per class, with widths.  For each
/// s | N there are phi(gcd(s, N/s)) classes; representatives r run over units
/// mod gcd(s, N/s) lifted to be coprime to s.
pub fn cusps_gamma0(n: u64) -> Vec<CuspData> {
    let mut out = Vec::new();
    for s in divisors(n) {
        let g = gcd(s, n / s);
        let width = cusp_width(n, s);
        if s == n {
            // infinity, by convention 1/N with width 1
            out.push(CuspData { numer: 1, denom: s, width, is_infinity: true });
            continue;
        }
        for a in 0..g.max(1) {
            if gcd(a, g) != 1 {
                continue;
            }
            // lift representative a mod g to something coprime to s
            let mut r = a;
            while gcd(r, s) != 1 {
                r += g;
            }
            out.push(CuspData { numer: r, denom: s, width, is_infinity: false });
        }
    }
    out
}

pub fn genus_gamma0(n: u64) -> u64 {
    let idx = index_gamma0(n) as i64;
    let g12 = 12 + idx - 3 * nu2(n) as i64 - 4 * nu3(n) as i64 - 6 * num_cusps_gamma0(n) as i64;
    assert!(g12 >= 0 && g12 % 12 == 0, "genus formula failure at N={n}");
    (g12 / 12) as u64
}

pub fn invariants_gamma0(n: u64) -> CurveInvariants {
    CurveInvariants {
        level: n,
        index: index_gamma0(n),
        nu2: nu2(n),
        nu3: nu3(n),
        num_cusps: num_cusps_gamma0(n),
        genus: genus_gamma0(n),
    }
}

/// Index of Gamma_1(N) in SL_2(Z) (with the N <= 2 exceptions).
pub fn index_gamma1(n: u64) -> u64 {
    match n {
        1 => 1,
        2 => 3,
        _ => index_gamma0(n) * phi(n) / 2,
    }
}

/// True iff X_0(N) has no elliptic points.
pub fn has_no_elliptic(n: u64) -> bool {
    nu2(n) == 0 && nu3(n) == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Gamma0,
    Gamma1,
}

/// Proven generation-weight bound over C: 3 for Gamma_1(N), N >= 5; for
/// Gamma_0(N), 6 when there are no elliptic points, 10 for squarefree N,
/// and no bound otherwise.
pub fn weight_bound_complex(group: Group, n: u64) -> Option<u32> {
    match group {
        Group::Gamma1 => (n >= 5).then_some(3),
        Group::Gamma0 => {
            if has_no_elliptic(n) {
                Some(6)
            } else if is_squarefree(n) {
                Some(10)
            } else {
                None
            }
        }
    }
}

/// deg omega on X_1(N) = [SL_2(Z) : Gamma_1(N)] / 12, as (numer, denom).
pub fn degree_omega_gamma1(n: u64) -> (u64, u64) {
    assert!(n >= 5, "degree_omega_gamma1 requires N >= 5");
    let idx = index_gamma1(n);
    let g = gcd(idx, 12);
    (idx / g, 12 / g)
}

/// Eichler-Deuring mass formula right-hand side (p-1)/24, as (numer, denom).
pub fn mass_formula_rhs(p: u64) -> (u64, u64) {
    assert!(crate::arith::is_prime(p) && p >= 5, "mass_formula_rhs requires prime p >= 5");
    let g = gcd(p - 1, 24);
    ((p - 1) / g, 24 / g)
}

/// dim M_k(SL_2(Z)) for even k >= 0.
pub fn dim_mk_sl2(k: u32) -> u64 {
    assert!(k % 2 == 0);
    let k = k as u64;
    if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

/// dim M_k(Gamma_0(N)) for even k >= 0 (holomorphic forms, trivial character).
pub fn dim_mk_gamma0(n: u64, k: u32) -> u64 {
    assert!(k % 2 == 0);
    if n == 1 {
        return dim_mk_sl2(k);
    }
    if k == 0 {
        return 1;
    }
    let g = genus_gamma0(n) as i64;
    let eps = num_cusps_gamma0(n) as i64;
    if k == 2 {
        return (g + eps - 1) as u64;
    }
    let k = k as i64;
    let d = (k - 1) * (g - 1)
        + (k / 4) * nu2(n) as i64
        + (k / 3) * nu3(n) as i64
        + (k / 2) * eps;
    assert!(d >= 0);
    d as u64
}

/// d_k(N)^* = (k-1)N/12 + 1/2 - (1/4)(-1 | (k-1)N) - (1/3)(-3 | (k-1)N),
/// where (.|.) is the Kronecker symbol.  Integral for the valid inputs.
pub fn dim_mk_star(n: u64, k: u32) -> i64 {
    // the formula is stated for (odd) squarefree level; even N makes the
    // displayed expression non-integral under the Kronecker convention
    assert!(is_squarefree(n) && n % 2 == 1, "dim_mk_star requires odd squarefree N");
    let m = ((k as i64) - 1) * n as i64;
    let num = m * 6 + 36 - 18 * kronecker(-1, m) as i64 - 24 * kronecker(-3, m) as i64;
    assert!(num % 72 == 0, "d_k(N)* not integral at N={n} k={k}");
    num / 72
}

/// Sturm bound for M_k(Gamma_0(N)): ceil(k * index / 12).
pub fn sturm_bound_gamma0(n: u64, k: u32) -> u64 {
    let idx = index_gamma0(n);
    (k as u64 * idx).div_ceil(12)
}
