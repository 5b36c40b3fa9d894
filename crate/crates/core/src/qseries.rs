//! Exact q-expansions with rational coefficients.
//!
//! A `QExpansion` is a truncated series sum_{i<prec} c_i q^{i + shift24/24};
//! the fractional shift (in units of 1/24) lets eta quotients with
//! non-integral leading exponent live in the same type.  Forms that enter
//! linear algebra are always normalized to `shift24 = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::arith::divisors;

/// Coefficient ring a series (or basis) is asserted to live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffRing {
    /// Rational numbers; no denominator constraint.
    Q,
    /// Z[1/M]: denominators must be M-smooth.
    ZInv(u64),
    /// Plain integers.
    Z,
}

impl CoeffRing {
    /// Does `x` lie in this ring?
    pub fn contains(&self, x: &BigRational) -> bool {
        match self {
            CoeffRing::Q => true,
            CoeffRing::Z => x.is_integer(),
            CoeffRing::ZInv(m) => is_m_smooth(x.denom(), *m),
        }
    }

    pub fn parse(s: &str) -> Option<CoeffRing> {
        match s {
            "Q" => Some(CoeffRing::Q),
            "Z" => Some(CoeffRing::Z),
            _ => {
                let rest = s.strip_prefix("Z/1_")?;
                rest.parse::<u64>().ok().map(CoeffRing::ZInv)
            }
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Q => write!(f, "Q"),
            CoeffRing::Z => write!(f, "Z"),
            CoeffRing::ZInv(m) => write!(f, "Z/1_{m}"),
        }
    }
}

/// True iff every prime dividing `n` divides `m`.
pub fn is_m_smooth(n: &BigInt, m: u64) -> bool {
    let mut n = n.abs();
    if n.is_one() {
        return true;
    }
    if m == 0 {
        return false;
    }
    let m = BigInt::from(m);
    loop {
        let g = n.gcd(&m);
        if g.is_one() {
            return n.is_one();
        }
        while (&n % &g).is_zero() {
            n /= &g;
        }
        if n.is_one() {
            return true;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    /// Coefficients of q^{shift24/24}, q^{shift24/24 + 1}, ...
    pub coeffs: Vec<BigRational>,
    /// Leading exponent numerator in 24ths.
    pub shift24: i64,
}

impl QExpansion {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        QExpansion { coeffs, shift24: 0 }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QExpansion::new(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn zero(prec: usize) -> Self {
        QExpansion::new(vec![BigRational::zero(); prec])
    }

    pub fn one(prec: usize) -> Self {
        let mut c = vec![BigRational::zero(); prec];
        c[0] = BigRational::one();
        QExpansion::new(c)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of q^n (integral exponents only; requires shift24 = 0).
    pub fn coeff(&self, n: usize) -> &BigRational {
        assert_eq!(self.shift24, 0, "coeff() on shifted series");
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero stored coefficient, if any.
    pub fn lead_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// q-valuation in 24ths of a power of q.
    pub fn valuation24(&self) -> Option<i64> {
        self.lead_index().map(|i| self.shift24 + 24 * i as i64)
    }

    /// Integral q-valuation; panics if the series has fractional exponents.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation24().map(|v| {
            assert!(v % 24 == 0, "fractional valuation");
            v / 24
        })
    }

    pub fn truncate(&mut self, prec: usize) {
        self.coeffs.truncate(prec);
    }

    pub fn truncated(&self, prec: usize) -> Self {
        let mut out = self.clone();
        out.truncate(prec);
        out
    }

    /// Re-expresses a series whose shift is a multiple of 24 with shift 0,
    /// padding with leading zeros (shift must be >= 0) and keeping precision.
    pub fn normalized(&self) -> Self {
        if self.shift24 == 0 {
            return self.clone();
        }
        assert!(self.shift24 % 24 == 0 && self.shift24 >= 0, "cannot normalize shift {}", self.shift24);
        let pad = (self.shift24 / 24) as usize;
        let mut coeffs = vec![BigRational::zero(); pad];
        coeffs.extend_from_slice(&self.coeffs);
        coeffs.truncate(self.prec());
        QExpansion { coeffs, shift24: 0 }
    }

    pub fn add(&self, other: &QExpansion) -> QExpansion {
        assert_eq!(self.shift24, other.shift24, "add with mismatched shifts");
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        QExpansion { coeffs, shift24: self.shift24 }
    }

    pub fn sub(&self, other: &QExpansion) -> QExpansion {
        assert_eq!(self.shift24, other.shift24, "sub with mismatched shifts");
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        QExpansion { coeffs, shift24: self.shift24 }
    }

    pub fn scale(&self, c: &BigRational) -> QExpansion {
        QExpansion {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            shift24: self.shift24,
        }
    }

    pub fn mul(&self, other: &QExpansion) -> QExpansion {
        let prec = self.prec().min(other.prec());
        let mut coeffs = vec![BigRational::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QExpansion { coeffs, shift24: self.shift24 + other.shift24 }
    }

    pub fn pow(&self, e: u64) -> QExpansion {
        let prec = self.prec();
        let mut result = QExpansion::one(prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse of a series with unit constant term (shift ignored,
    /// negated on the output).
    pub fn inverse(&self) -> QExpansion {
        let a0 = &self.coeffs[0];
        assert!(!a0.is_zero(), "inverse of series with zero leading coefficient");
        let prec = self.prec();
        let inv0 = a0.recip();
        let mut coeffs = vec![BigRational::zero(); prec];
        coeffs[0] = inv0.clone();
        for n in 1..prec {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &coeffs[n - k];
                }
            }
            coeffs[n] = -&inv0 * acc;
        }
        QExpansion { coeffs, shift24: -self.shift24 }
    }

    /// Divides by a series whose leading coefficient is nonzero, shifting out
    /// the divisor's q-valuation.  Precision drops by that valuation.
    pub fn div(&self, other: &QExpansion) -> QExpansion {
        let lead = other.lead_index().expect("division by zero series");
        let shifted = QExpansion {
            coeffs: other.coeffs[lead..].to_vec(),
            shift24: other.shift24 + 24 * lead as i64,
        };
        self.truncated(shifted.prec()).mul(&shifted.inverse())
    }

    /// Substitutes q -> q^d (spreads exponents; keeps stated precision).
    pub fn expand_by(&self, d: u64) -> QExpansion {
        assert!(self.shift24 == 0 && d >= 1);
        let prec = self.prec();
        let mut coeffs = vec![BigRational::zero(); prec];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = i * d as usize;
            if j >= prec {
                break;
            }
            coeffs[j] = c.clone();
        }
        QExpansion::new(coeffs)
    }
}

/// U_p operator on q-expansions: picks every p-th coefficient.
pub fn u_operator(f: &QExpansion, p: u64) -> QExpansion {
    assert_eq!(f.shift24, 0);
    let p = p as usize;
    let coeffs = f.coeffs.iter().step_by(p).cloned().collect();
    QExpansion::new(coeffs)
}

fn big(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2), via the standard recurrence.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b = Vec::with_capacity(n + 1);
    for m in 0..=n {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, k)
        for (k, bk) in b.iter().enumerate().take(m) {
            acc += BigRational::from(binom.clone()) * bk;
            binom = binom * BigInt::from((m + 1 - k) as i64) / BigInt::from((k + 1) as i64);
        }
        let bm = if m == 0 {
            BigRational::one()
        } else {
            -acc / big((m + 1) as i64)
        };
        b.push(bm);
    }
    b
}

/// sigma_{k-1}(n) for n >= 1.
fn sigma(n: u64, pow: u32) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(pow)).sum()
}

/// Level-one Eisenstein series E_k, normalized with constant term 1,
/// for even k >= 4; returns E_k(dz) as a series in q.
pub fn eisenstein_qexp(k: u32, d: u64, prec: usize) -> QExpansion {
    assert!(k >= 4 && k % 2 == 0);
    let b = bernoulli_numbers(k as usize);
    let factor = big(-2) * big(k as i64) / &b[k as usize];
    let mut coeffs = vec![BigRational::zero(); prec];
    coeffs[0] = BigRational::one();
    let mut n = 1u64;
    loop {
        let idx = n * d;
        if idx as usize >= prec {
            break;
        }
        coeffs[idx as usize] = &factor * BigRational::from(sigma(n, k - 1));
        n += 1;
    }
    QExpansion::new(coeffs)
}

/// Quasi-modular E_2 with constant term 1: E_2 = 1 - 24 sum sigma_1(n) q^n,
/// expanded at dz.
pub fn e2_qexp(d: u64, prec: usize) -> QExpansion {
    let mut coeffs = vec![BigRational::zero(); prec];
    coeffs[0] = BigRational::one();
    let mut n = 1u64;
    loop {
        let idx = n * d;
        if idx as usize >= prec {
            break;
        }
        coeffs[idx as usize] = big(-24) * BigRational::from(sigma(n, 1));
        n += 1;
    }
    QExpansion::new(coeffs)
}

/// The weight-2 form (d E_2(dz) - E_2(z)) / (d - 1) on Gamma_0(N) for d | N,
/// d > 1, normalized to constant term 1.
pub fn weight2_eisenstein(d: u64, prec: usize) -> QExpansion {
    assert!(d > 1);
    let num = e2_qexp(d, prec).scale(&big(d as i64)).sub(&e2_qexp(1, prec));
    num.scale(&big(d as i64 - 1).recip())
}

/// Integral variant: d E_2(dz) - E_2(z), constant term d - 1.
pub fn weight2_eisenstein_integral(d: u64, prec: usize) -> QExpansion {
    assert!(d > 1);
    e2_qexp(d, prec).scale(&big(d as i64)).sub(&e2_qexp(1, prec))
}

/// q-expansion of eta(d z) / q^{d/24}, i.e. the Euler product
/// prod_{n>=1} (1 - q^{dn}), as a shift-free series.
pub fn eta_euler_product(d: u64, prec: usize) -> QExpansion {
    // Pentagonal number theorem: prod (1 - x^n) = sum_k (-1)^k x^{k(3k-1)/2}.
    let mut coeffs = vec![BigRational::zero(); prec];
    let mut k: i64 = 0;
    loop {
        let mut hit = false;
        for kk in [k, -k] {
            let e = kk * (3 * kk - 1) / 2;
            let idx = e as u64 * d;
            if (idx as usize) < prec {
                hit = true;
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                coeffs[idx as usize] = big(sign);
            }
            if kk == 0 {
                break;
            }
        }
        if !hit && k > 0 {
            break;
        }
        k += 1;
    }
    QExpansion::new(coeffs)
}

/// Delta = eta(z)^24 = q prod (1-q^n)^24.
pub fn delta_qexp(prec: usize) -> QExpansion {
    let mut f = eta_euler_product(1, prec).pow(24);
    f.shift24 = 24;
    f.normalized()
}

/// Echelonized basis of M_k(SL_2(Z)) over Q (Victor Miller basis): the i-th
/// element is q^i + O(q^{dim}).  Entries are integral.
pub fn victor_miller_basis(k: u32, prec: usize) -> Vec<QExpansion> {
    assert!(k % 2 == 0);
    let d = crate::modcurve::dim_mk_sl2(k) as usize;
    if d == 0 {
        return Vec::new();
    }
    if k == 0 {
        return vec![QExpansion::one(prec)];
    }
    // Write k = 12m + s with s in {0,4,6,8,10,14}; basis spanned by
    // Delta^j E_4^a E_6^b for suitable exponents.  Build any spanning set of
    // monomials Delta^j * E_6^(2e) * E_4^c reaching valuations 0..d-1 and
    // echelonize.
    let e4 = eisenstein_qexp(4, 1, prec);
    let e6 = eisenstein_qexp(6, 1, prec);
    let delta = delta_qexp(prec);
    let mut rows: Vec<QExpansion> = Vec::new();
    for j in 0..d as u32 {
        // need weight k - 12j from E4^a E6^b
        let rem = k - 12 * j;
        // pick b in {0,1} by parity of rem/2
        let b = if (rem / 2) % 2 == 1 { 1 } else { 0 };
        let a = (rem - 6 * b) / 4;
        let mut f = delta.pow(j as u64);
        f = f.mul(&e4.pow(a as u64));
        if b == 1 {
            f = f.mul(&e6);
        }
        rows.push(f);
    }
    // Gaussian elimination to echelon form with pivot columns 0..d-1.
    for i in 0..d {
        // find row with nonzero coeff at column i
        let piv = (i..d).find(|&r| !rows[r].coeffs[i].is_zero()).expect("VM pivot");
        rows.swap(i, piv);
        let inv = rows[i].coeffs[i].recip();
        rows[i] = rows[i].scale(&inv);
        for r in 0..d {
            if r != i && !rows[r].coeffs[i].is_zero() {
                let c = rows[r].coeffs[i].clone();
                rows[r] = rows[r].sub(&rows[i].scale(&c));
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &QExpansion, n: usize) -> Vec<i64> {
        f.coeffs[..n]
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer coefficient {c}");
                use num_traits::ToPrimitive;
                c.numer().to_i64().unwrap()
            })
            .collect()
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], big(1));
        assert_eq!(b[1], big(-1) / big(2));
        assert_eq!(b[2], big(1) / big(6));
        assert_eq!(b[4], big(-1) / big(30));
        assert_eq!(b[12], big(-691) / big(2730));
        assert!(b[3].is_zero() && b[5].is_zero() && b[11].is_zero());
    }

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein_qexp(4, 1, 6);
        assert_eq!(ints(&e4, 6), vec![1, 240, 2160, 6720, 17520, 30240]);
        let e6 = eisenstein_qexp(6, 1, 5);
        assert_eq!(ints(&e6, 5), vec![1, -504, -16632, -122976, -532728]);
    }

    #[test]
    fn delta_matches_known_tau() {
        let d = delta_qexp(12);
        // tau(n) for n = 1..11
        assert_eq!(
            ints(&d, 12),
            vec![0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612]
        );
    }

    #[test]
    fn delta_from_discriminant_formula() {
        // Independent oracle: 1728 Delta = E4^3 - E6^2.
        let prec = 40;
        let e4 = eisenstein_qexp(4, 1, prec);
        let e6 = eisenstein_qexp(6, 1, prec);
        let lhs = delta_qexp(prec).scale(&big(1728));
        let rhs = e4.pow(3).sub(&e6.pow(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight2_eisenstein_normalization() {
        let f = weight2_eisenstein(2, 8);
        // (2 E2(2z) - E2(z)) / 1: a0 = 1, a1 = 24, a2 = 24, a3 = 96, ...
        assert_eq!(ints(&f, 6), vec![1, 24, 24, 96, 24, 144]);
    }

    #[test]
    fn inverse_and_div_roundtrip() {
        let e4 = eisenstein_qexp(4, 1, 20);
        let inv = e4.inverse();
        assert_eq!(e4.mul(&inv), QExpansion::one(20));
        let d = delta_qexp(20);
        let q = d.mul(&e4).div(&e4);
        assert_eq!(q, d.truncated(q.prec()));
    }

    #[test]
    fn u_operator_picks_residues() {
        let f = QExpansion::from_i64(&[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let g = u_operator(&f, 3);
        assert_eq!(g, QExpansion::from_i64(&[0, 3, 6]));
    }

    #[test]
    fn victor_miller_echelon_shape() {
        for k in (4..=60).step_by(2) {
            let d = crate::modcurve::dim_mk_sl2(k) as usize;
            let basis = victor_miller_basis(k, d + 10);
            assert_eq!(basis.len(), d);
            for (i, f) in basis.iter().enumerate() {
                for j in 0..d {
                    let expect = if i == j { big(1) } else { BigRational::zero() };
                    assert_eq!(f.coeffs[j], expect, "k={k} i={i} j={j}");
                }
                // integrality of the echelon basis
                assert!(f.coeffs.iter().all(|c| c.is_integer()), "k={k} i={i}");
            }
        }
    }

    #[test]
    fn m_smoothness() {
        use num_bigint::BigInt;
        assert!(is_m_smooth(&BigInt::from(1), 6));
        assert!(is_m_smooth(&BigInt::from(48), 6));
        assert!(!is_m_smooth(&BigInt::from(10), 6));
        assert!(is_m_smooth(&BigInt::from(-18), 6));
    }

    #[test]
    fn ring_parse_roundtrip() {
        for s in ["Q", "Z", "Z/1_66"] {
            assert_eq!(CoeffRing::parse(s).unwrap().to_string(), s);
        }
        assert!(CoeffRing::parse("Z/1_").is_none());
    }
}
