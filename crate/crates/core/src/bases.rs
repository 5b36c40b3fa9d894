//! Graded bases of M_k(Gamma_0(N), A) with q-expansions.
//!
//! Bases are produced by layered providers: a built-in Eisenstein layer,
//! a product-span layer (pairwise products of certified lower-weight bases,
//! plus holomorphic eta quotients), and ingestion of q-expansion data files.
//! Every basis is certified against the dimension formulas of `modcurve`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::etaforms::EtaQuotient;
use crate::exactlinalg::{self, ExactMatrix};
use crate::modcurve::{self, cusps_gamma0, dim_mk_gamma0, sturm_bound_gamma0};
use crate::qseries::{eisenstein_qexp, weight2_eisenstein, CoeffRing, QExpansion};

/// Which provider layer supplied a basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Eisenstein,
    Product,
    Eta,
    Ingested,
}

/// An echelonized basis of (a subspace of) M_k(Gamma_0(N), ring).
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub level: u64,
    pub weight: u32,
    pub ring: CoeffRing,
    pub prec: usize,
    pub vectors: Vec<QExpansion>,
    pub provenance: Vec<Provenance>,
    /// true iff rank equals dim M_k(Gamma_0(N)).
    pub certified_complete: bool,
}

impl GradedBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Coefficient rows over the first `self.prec` coefficients.
    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.vectors
            .iter()
            .map(|f| (0..self.prec).map(|i| f.coeff(i).clone()).collect())
            .collect()
    }
}

/// Basis of the Eisenstein subspace of M_k(Gamma_0(N)) as q-expansions:
/// E_k(dz) for d | N when k >= 4; for k = 2 the normalized combinations
/// (d E_2(dz) - E_2(z)) / (d - 1) for d | N, d > 1.
pub fn eisenstein_basis_gamma0(n: u64, k: u32, prec: usize) -> Vec<QExpansion> {
    assert!(k >= 2 && k % 2 == 0, "weight must be even and >= 2");
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    if k == 2 {
        divs.iter()
            .filter(|&&d| d > 1)
            .map(|&d| weight2_eisenstein(d, prec))
            .collect()
    } else {
        divs.iter().map(|&d| eisenstein_qexp(k, d, prec)).collect()
    }
}

/// Echelonize tagged q-expansions over Q: pivots at increasing q-valuation,
/// each pivot coefficient normalized to 1, pivot columns cleared elsewhere.
/// Each output vector keeps the tag of the row that supplied its pivot.
fn echelonize(
    items: Vec<(QExpansion, Provenance)>,
    prec: usize,
) -> (Vec<QExpansion>, Vec<Provenance>) {
    let mut rows: Vec<(Vec<BigRational>, Provenance)> = items
        .into_iter()
        .map(|(f, p)| ((0..prec).map(|i| f.coeff(i).clone()).collect(), p))
        .collect();
    let mut out: Vec<(usize, Vec<BigRational>, Provenance)> = Vec::new();
    for col in 0..prec {
        // reduce remaining rows by existing pivots first
        let piv = rows.iter().position(|(r, _)| !r[col].is_zero());
        let Some(piv) = piv else { continue };
        let (mut prow, tag) = rows.remove(piv);
        let inv = prow[col].recip();
        for x in prow.iter_mut() {
            *x = &*x * &inv;
        }
        for (r, _) in rows.iter_mut() {
            if !r[col].is_zero() {
                let f = r[col].clone();
                for (a, b) in r.iter_mut().zip(prow.iter()) {
                    *a = &*a - &f * b;
                }
            }
        }
        for (_, r, _) in out.iter_mut() {
            if !r[col].is_zero() {
                let f = r[col].clone();
                for (a, b) in r.iter_mut().zip(prow.iter()) {
                    *a = &*a - &f * b;
                }
            }
        }
        out.push((col, prow, tag));
        rows.retain(|(r, _)| r.iter().any(|x| !x.is_zero()));
        if rows.is_empty() {
            break;
        }
    }
    out.sort_by_key(|(c, _, _)| *c);
    let tags = out.iter().map(|(_, _, t)| *t).collect();
    let vecs = out
        .into_iter()
        .map(|(_, r, _)| QExpansion::new(r))
        .collect();
    (vecs, tags)
}

/// Eta quotients of weight k on Gamma_0(N), holomorphic at all cusps, found
/// by a bounded exponent search.  A convenience layer only: kept cheap, and
/// skipped entirely at levels with many divisors.
fn eta_span(n: u64, k: u32, prec: usize, limit: usize) -> Vec<QExpansion> {
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    if divs.len() > 4 || k > 12 {
        return Vec::new();
    }
    let cusps = cusps_gamma0(n);
    let target: i64 = 2 * k as i64;
    let bound: i64 = 16;
    let free = divs.len() - 1;
    let mut out = Vec::new();
    let mut exps = vec![0i64; divs.len()];
    let mut stack = vec![-bound; free];
    'outer: loop {
        for (i, &v) in stack.iter().enumerate() {
            exps[i] = v;
        }
        exps[free] = target - stack.iter().sum::<i64>();
        if exps[free].abs() <= bound {
            let eq = EtaQuotient::new(n, &divs.iter().copied().zip(exps.iter().copied()).collect::<Vec<_>>());
            if eq.newman_check().is_ok()
                && cusps.iter().all(|c| !eq.order_at_cusp(c).is_negative())
            {
                if let Ok(f) = eq.qexp(prec) {
                    out.push(f);
                    if out.len() >= limit {
                        break 'outer;
                    }
                }
            }
        }
        // odometer over the free exponents
        let mut i = 0;
        loop {
            if i == free {
                break 'outer;
            }
            stack[i] += 1;
            if stack[i] <= bound {
                break;
            }
            stack[i] = -bound;
            i += 1;
        }
    }
    out
}

/// Span of pairwise products of certified lower-weight bases, together with
/// the Eisenstein layer and holomorphic eta quotients, reduced to a
/// Q-echelon basis.  `certified_complete` is set iff the rank reaches
/// dim M_k(Gamma_0(N)).
pub fn product_span_basis(
    n: u64,
    k: u32,
    prec: usize,
    known: &[&GradedBasis],
) -> GradedBasis {
    assert!(k >= 2 && k % 2 == 0);
    let mut items: Vec<(QExpansion, Provenance)> = eisenstein_basis_gamma0(n, k, prec)
        .into_iter()
        .map(|f| (f, Provenance::Eisenstein))
        .collect();
    for (i, b1) in known.iter().enumerate() {
        for b2 in known.iter().skip(i) {
            if b1.weight + b2.weight != k || !b1.certified_complete || !b2.certified_complete {
                continue;
            }
            assert_eq!(b1.level, n);
            assert_eq!(b2.level, n);
            for f in &b1.vectors {
                for g in &b2.vectors {
                    items.push((f.mul(g).truncated(prec), Provenance::Product));
                }
            }
        }
    }
    for f in eta_span(n, k, prec, 24) {
        items.push((f.truncated(prec), Provenance::Eta));
    }
    let (vectors, provenance) = echelonize(items, prec);
    let dim = dim_mk_gamma0(n, k) as usize;
    assert!(vectors.len() <= dim, "span rank exceeds dimension");
    GradedBasis {
        level: n,
        weight: k,
        ring: CoeffRing::Q,
        prec,
        certified_complete: vectors.len() == dim,
        vectors,
        provenance,
    }
}

// ---------------------------------------------------------------------------
// ingestion
// ---------------------------------------------------------------------------

/// One record of a q-expansion data file.
#[derive(Clone, Debug, PartialEq)]
pub struct IngestRecord {
    pub level: u64,
    pub weight: u32,
    pub ring: CoeffRing,
    pub qexp: QExpansion,
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: precision {prec} below sturm bound {sturm} for N={level} k={weight}")]
    PrecisionTooLow {
        line: usize,
        level: u64,
        weight: u32,
        prec: usize,
        sturm: u64,
    },
    #[error("line {line}: coefficient {coeff} not admissible in {ring}")]
    Inadmissible {
        line: usize,
        coeff: String,
        ring: CoeffRing,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn parse_coeff(s: &str) -> Option<BigRational> {
    if let Some(dot) = s.find('.') {
        // exact decimal
        let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int_part.starts_with('-');
        let ip = match int_part.trim_start_matches('-') {
            "" => BigInt::zero(),
            t => BigInt::from_str(t).ok()?,
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut num = ip * &scale + BigInt::from_str(frac_part).ok()?;
        if neg {
            num = -num;
        }
        return Some(BigRational::new(num, scale));
    }
    BigRational::from_str(s).ok()
}

/// Parse the line-oriented record format `N k RING PREC : c0 c1 ...`.
/// Comment lines start with `#`.
pub fn ingest_qexp_str(input: &str) -> Result<Vec<IngestRecord>, IngestError> {
    let mut out = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let malformed = |msg: &str| IngestError::Malformed {
            line,
            msg: msg.to_string(),
        };
        let (head, tail) = s.split_once(':').ok_or_else(|| malformed("missing ':'"))?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(malformed("header must be `N k RING PREC`"));
        }
        let level: u64 = fields[0].parse().map_err(|_| malformed("bad level"))?;
        let weight: u32 = fields[1].parse().map_err(|_| malformed("bad weight"))?;
        if level == 0 || weight == 0 || weight % 2 != 0 {
            return Err(malformed("level must be >= 1 and weight even >= 2"));
        }
        let ring = CoeffRing::parse(fields[2]).ok_or_else(|| malformed("bad ring"))?;
        let prec: usize = fields[3].parse().map_err(|_| malformed("bad precision"))?;
        let coeffs: Vec<BigRational> = tail
            .split_whitespace()
            .map(|t| parse_coeff(t).ok_or_else(|| malformed(&format!("bad coefficient `{t}`"))))
            .collect::<Result<_, _>>()?;
        if coeffs.len() != prec {
            return Err(malformed(&format!(
                "declared precision {prec} but {} coefficients",
                coeffs.len()
            )));
        }
        let sturm = sturm_bound_gamma0(level, weight);
        if (prec as u64) < sturm {
            return Err(IngestError::PrecisionTooLow {
                line,
                level,
                weight,
                prec,
                sturm,
            });
        }
        if let Some(bad) = coeffs.iter().find(|c| !ring.contains(c)) {
            return Err(IngestError::Inadmissible {
                line,
                coeff: bad.to_string(),
                ring,
            });
        }
        out.push(IngestRecord {
            level,
            weight,
            ring,
            qexp: QExpansion::new(coeffs),
        });
    }
    Ok(out)
}

pub fn ingest_qexp_file(path: &Path) -> Result<Vec<IngestRecord>, IngestError> {
    ingest_qexp_str(&std::fs::read_to_string(path)?)
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Print one record in the canonical form; `ingest(print(r)) == [r]`.
pub fn print_record(r: &IngestRecord) -> String {
    let mut s = format!("{} {} {} {} :", r.level, r.weight, r.ring, r.qexp.prec());
    for i in 0..r.qexp.prec() {
        write!(s, " {}", fmt_coeff(r.qexp.coeff(i))).unwrap();
    }
    s
}

pub fn print_records(recs: &[IngestRecord]) -> String {
    recs.iter()
        .map(print_record)
        .collect::<Vec<_>>()
        .join("\n")
}

/// The q-expansion data pack bundled with the crate: cusp form bases of
/// S_k(Gamma_0(N)) for N <= 30, k in {2, 4, 6}, plus character Eisenstein
/// supplements at levels with a square factor.
pub fn bundled_pack() -> &'static str {
    include_str!("../../../data/basis_pack.txt")
}

// ---------------------------------------------------------------------------
// saturation
// ---------------------------------------------------------------------------

/// Replace a certified Q-basis by one whose coefficient lattice (over the
/// full `prec` window) is saturated: a Z-basis in Hermite normal form of the
/// saturation of the lattice spanned by the denominator-cleared vectors.
/// Suitable as the A-basis over Z or Z[1/M].
pub fn integral_saturated_basis(b: &GradedBasis, ring: &CoeffRing) -> GradedBasis {
    assert!(b.certified_complete, "input basis must be certified");
    if b.vectors.is_empty() {
        return GradedBasis {
            ring: ring.clone(),
            ..b.clone()
        };
    }
    let mut int_rows: Vec<Vec<BigInt>> = Vec::new();
    for f in &b.vectors {
        let mut lcm = BigInt::one();
        for i in 0..b.prec {
            let d = f.coeff(i).denom();
            lcm = num_integer::lcm(lcm, d.clone());
        }
        int_rows.push(
            (0..b.prec)
                .map(|i| {
                    let c = f.coeff(i) * BigRational::from(lcm.clone());
                    assert!(c.denom().is_one());
                    c.numer().clone()
                })
                .collect(),
        );
    }
    let sat = exactlinalg::saturate(&int_rows);
    // HNF for a deterministic echelon-like normal form
    let (h, _) = exactlinalg::hnf(&ExactMatrix::new(sat));
    let vectors: Vec<QExpansion> = h
        .data
        .iter()
        .take_while(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| QExpansion::new(r.iter().map(|x| BigRational::from(x.clone())).collect()))
        .collect();
    assert_eq!(vectors.len(), b.vectors.len());
    GradedBasis {
        level: b.level,
        weight: b.weight,
        ring: ring.clone(),
        prec: b.prec,
        provenance: b.provenance.clone(),
        certified_complete: true,
        vectors,
    }
}

// ---------------------------------------------------------------------------
// provider
// ---------------------------------------------------------------------------

/// Layered basis provider: built-in Eisenstein constructions first, then
/// product spans of certified lower-weight bases (with eta quotients), then
/// ingested q-expansion records.  The first layer that certifies wins.
pub struct BasisProvider {
    records: BTreeMap<(u64, u32), Vec<QExpansion>>,
    cache: Mutex<BTreeMap<(u64, u32, usize), GradedBasis>>,
}

impl BasisProvider {
    pub fn new() -> Self {
        BasisProvider {
            records: BTreeMap::new(),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// Provider primed with the bundled data pack.
    pub fn with_bundled_pack() -> Self {
        let mut p = BasisProvider::new();
        p.add_records(ingest_qexp_str(bundled_pack()).expect("bundled pack is valid"));
        p
    }

    pub fn add_records(&mut self, recs: Vec<IngestRecord>) {
        for r in recs {
            self.records
                .entry((r.level, r.weight))
                .or_default()
                .push(r.qexp);
        }
        self.cache.lock().unwrap().clear();
    }

    /// Largest precision the provider can serve for (n, k) from records;
    /// None when no records exist for that key.
    pub fn record_prec(&self, n: u64, k: u32) -> Option<usize> {
        self.records
            .get(&(n, k))
            .map(|v| v.iter().map(|f| f.prec()).min().unwrap_or(0))
    }

    /// Q-echelon basis of M_k(Gamma_0(N)) to `prec` coefficients.
    pub fn q_basis(&self, n: u64, k: u32, prec: usize) -> GradedBasis {
        assert!(n >= 1 && k >= 2 && k % 2 == 0);
        let key = (n, k, prec);
        if let Some(b) = self.cache.lock().unwrap().get(&key) {
            return b.clone();
        }
        let dim = dim_mk_gamma0(n, k) as usize;

        // layer 1: Eisenstein only
        let eis: Vec<(QExpansion, Provenance)> = eisenstein_basis_gamma0(n, k, prec)
            .into_iter()
            .map(|f| (f, Provenance::Eisenstein))
            .collect();
        let (vectors, provenance) = echelonize(eis, prec);
        let mut best = GradedBasis {
            level: n,
            weight: k,
            ring: CoeffRing::Q,
            prec,
            certified_complete: vectors.len() == dim,
            vectors,
            provenance,
        };

        // layer 2: products of certified lower bases + eta quotients
        if !best.certified_complete && k >= 4 {
            let lower: Vec<GradedBasis> = (1..k / 2)
                .map(|j| self.q_basis(n, 2 * j, prec))
                .collect();
            let refs: Vec<&GradedBasis> = lower.iter().collect();
            let b = product_span_basis(n, k, prec, &refs);
            if b.rank() > best.rank() || b.certified_complete {
                best = b;
            }
        }

        // layer 3: ingested records
        if !best.certified_complete {
            if let Some(recs) = self.records.get(&(n, k)) {
                let mut items: Vec<(QExpansion, Provenance)> = best
                    .vectors
                    .iter()
                    .zip(best.provenance.iter())
                    .map(|(f, p)| (f.clone(), *p))
                    .collect();
                for f in recs {
                    if f.prec() >= prec {
                        items.push((f.truncated(prec), Provenance::Ingested));
                    }
                }
                let (vectors, provenance) = echelonize(items, prec);
                assert!(vectors.len() <= dim, "span rank exceeds dimension");
                best = GradedBasis {
                    level: n,
                    weight: k,
                    ring: CoeffRing::Q,
                    prec,
                    certified_complete: vectors.len() == dim,
                    vectors,
                    provenance,
                };
            }
        }

        self.cache.lock().unwrap().insert(key, best.clone());
        best
    }

    /// Basis over the requested ring: the Q-echelon basis for Q, and the
    /// saturated integral basis for Z and Z[1/M].  Returns an uncertified
    /// Q-basis unchanged (saturation requires certification).
    pub fn ring_basis(&self, n: u64, k: u32, prec: usize, ring: &CoeffRing) -> GradedBasis {
        let b = self.q_basis(n, k, prec);
        match ring {
            CoeffRing::Q => b,
            _ if b.certified_complete => integral_saturated_basis(&b, ring),
            _ => b,
        }
    }

    /// Working precision for generator runs at level n up to weight `kmax`:
    /// one past the largest Sturm bound needed.
    pub fn working_prec(n: u64, kmax: u32) -> usize {
        sturm_bound_gamma0(n, kmax) as usize + 1
    }
}

impl Default for BasisProvider {
    fn default() -> Self {
        BasisProvider::new()
    }
}

#[allow(unused)]
fn _dim(n: u64, k: u32) -> u64 {
    modcurve::dim_mk_gamma0(n, k)
}
