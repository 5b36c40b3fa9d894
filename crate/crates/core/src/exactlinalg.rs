//! Exact integer and rational linear algebra: Hermite and Smith normal forms
//! with transforms, lattice saturation, rank, and span membership over Q,
//! Z, and Z[1/M].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qseries::{is_m_smooth, CoeffRing};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl ExactMatrix {
    pub fn new(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix { rows, cols, data }
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        ExactMatrix::new(
            data.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        ExactMatrix { rows: n, cols: n, data }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let data = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols)
                            .map(|k| &self.data[i][k] * &other.data[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: other.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// Rank over Q by fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            let piv = (rank..self.rows).find(|&r| !m[r][col].is_zero());
            let Some(piv) = piv else {
                col += 1;
                continue;
            };
            m.swap(rank, piv);
            for r in rank + 1..self.rows {
                if !m[r][col].is_zero() {
                    let a = m[rank][col].clone();
                    let b = m[r][col].clone();
                    for c in col..self.cols {
                        m[r][c] = &m[r][c] * &a - &m[rank][c] * &b;
                    }
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }
}

/// Row Hermite normal form: returns (H, U) with H = U * M, U unimodular.
/// H is upper echelon with positive pivots; entries above each pivot are
/// reduced into [0, pivot).
pub fn hnf(m: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let mut h = m.clone();
    let mut u = ExactMatrix::identity(m.rows);
    let mut row = 0;
    for col in 0..h.cols {
        if row >= h.rows {
            break;
        }
        // clear the column below `row` using extended-gcd row ops
        loop {
            let piv = (row..h.rows).find(|&r| !h.data[r][col].is_zero());
            let Some(piv) = piv else { break };
            if piv != row {
                h.swap_rows(row, piv);
                u.swap_rows(row, piv);
            }
            let mut done = true;
            for r in row + 1..h.rows {
                if !h.data[r][col].is_zero() {
                    done = false;
                    let a = h.data[row][col].clone();
                    let b = h.data[r][col].clone();
                    let eg = a.extended_gcd(&b);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let (p, q) = (&a / &g, &b / &g);
                    for c in 0..h.cols {
                        let x = h.data[row][c].clone();
                        let y = h.data[r][c].clone();
                        h.data[row][c] = &s * &x + &t * &y;
                        h.data[r][c] = -&q * &x + &p * &y;
                    }
                    for c in 0..u.cols {
                        let x = u.data[row][c].clone();
                        let y = u.data[r][c].clone();
                        u.data[row][c] = &s * &x + &t * &y;
                        u.data[r][c] = -&q * &x + &p * &y;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.data[row][col].is_zero() {
            continue;
        }
        if h.data[row][col].is_negative() {
            for c in 0..h.cols {
                h.data[row][c] = -h.data[row][c].clone();
            }
            for c in 0..u.cols {
                u.data[row][c] = -u.data[row][c].clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        let p = h.data[row][col].clone();
        for r in 0..row {
            let q = h.data[r][col].div_floor(&p);
            if !q.is_zero() {
                for c in 0..h.cols {
                    let sub = &q * &h.data[row][c];
                    h.data[r][c] -= sub;
                }
                for c in 0..u.cols {
                    let sub = &q * &u.data[row][c];
                    u.data[r][c] -= sub;
                }
            }
        }
        row += 1;
    }
    (h, u)
}

/// Smith normal form with all transforms: D = U * M * V, plus V^{-1}
/// (needed for saturation).  Diagonal entries are non-negative and satisfy
/// the divisibility chain.
pub fn snf(m: &ExactMatrix) -> (ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix) {
    let mut d = m.clone();
    let mut u = ExactMatrix::identity(m.rows);
    let mut v = ExactMatrix::identity(m.cols);
    let mut vinv = ExactMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    // row op: row r_dst += q * row r_src on (d, u)
    // col op on d and v: col c_dst += q * col c_src; on vinv the inverse row op
    for t in 0..n {
        loop {
            // find a nonzero pivot in the remaining block
            let mut piv = None;
            'search: for i in t..d.rows {
                for j in t..d.cols {
                    if !d.data[i][j].is_zero() {
                        piv = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = piv else {
                return finalize_snf(d, u, v, vinv);
            };
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                vinv.swap_rows(t, pj);
            }
            // clear column t below the pivot
            for i in t + 1..d.rows {
                if !d.data[i][t].is_zero() {
                    let a = d.data[t][t].clone();
                    let b = d.data[i][t].clone();
                    let eg = a.extended_gcd(&b);
                    let (g, s, tt) = (eg.gcd, eg.x, eg.y);
                    let (p, q) = (&a / &g, &b / &g);
                    for c in 0..d.cols {
                        let x = d.data[t][c].clone();
                        let y = d.data[i][c].clone();
                        d.data[t][c] = &s * &x + &tt * &y;
                        d.data[i][c] = -&q * &x + &p * &y;
                    }
                    for c in 0..u.cols {
                        let x = u.data[t][c].clone();
                        let y = u.data[i][c].clone();
                        u.data[t][c] = &s * &x + &tt * &y;
                        u.data[i][c] = -&q * &x + &p * &y;
                    }
                }
            }
            // clear row t right of the pivot
            let mut row_dirty = false;
            for j in t + 1..d.cols {
                if !d.data[t][j].is_zero() {
                    let a = d.data[t][t].clone();
                    let b = d.data[t][j].clone();
                    let eg = a.extended_gcd(&b);
                    let (g, s, tt) = (eg.gcd, eg.x, eg.y);
                    let (p, q) = (&a / &g, &b / &g);
                    // columns (t, j) <- (s*col_t + tt*col_j, -q*col_t + p*col_j)
                    for i in 0..d.rows {
                        let x = d.data[i][t].clone();
                        let y = d.data[i][j].clone();
                        d.data[i][t] = &s * &x + &tt * &y;
                        d.data[i][j] = -&q * &x + &p * &y;
                    }
                    for i in 0..v.rows {
                        let x = v.data[i][t].clone();
                        let y = v.data[i][j].clone();
                        v.data[i][t] = &s * &x + &tt * &y;
                        v.data[i][j] = -&q * &x + &p * &y;
                    }
                    // inverse of [[s, -q], [tt, p]] (det 1) is [[p, q], [-tt, s]]
                    for c in 0..vinv.cols {
                        let x = vinv.data[t][c].clone();
                        let y = vinv.data[j][c].clone();
                        vinv.data[t][c] = &p * &x + &q * &y;
                        vinv.data[j][c] = -&tt * &x + &s * &y;
                    }
                    row_dirty = true;
                }
            }
            if !row_dirty {
                break;
            }
        }
    }
    finalize_snf(d, u, v, vinv)
}

/// Enforces sign and the divisibility chain on an already-diagonal matrix.
fn finalize_snf(
    mut d: ExactMatrix,
    mut u: ExactMatrix,
    mut v: ExactMatrix,
    mut vinv: ExactMatrix,
) -> (ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix) {
    let n = d.rows.min(d.cols);
    for i in 0..n {
        if d.data[i][i].is_negative() {
            for c in 0..d.cols {
                d.data[i][c] = -d.data[i][c].clone();
            }
            for c in 0..u.cols {
                u.data[i][c] = -u.data[i][c].clone();
            }
        }
    }
    // fix divisibility: if d_i does not divide d_j (i < j), fold them
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (d.data[i][i].clone(), d.data[j][j].clone());
                if !a.is_zero() && !(&b % &a).is_zero() {
                    // add column j to column i, then re-clear the 2x2 block
                    for r in 0..d.rows {
                        let add = d.data[r][j].clone();
                        d.data[r][i] += add;
                    }
                    for r in 0..v.rows {
                        let add = v.data[r][j].clone();
                        v.data[r][i] += add;
                    }
                    for c in 0..vinv.cols {
                        let sub = vinv.data[i][c].clone();
                        vinv.data[j][c] -= sub;
                    }
                    // now block [[a,0],[b,b]] at (i,j)x(i,j); row-reduce with gcd
                    let eg = a.extended_gcd(&b);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let (p, q) = (&a / &g, &b / &g);
                    for c in 0..d.cols {
                        let x = d.data[i][c].clone();
                        let y = d.data[j][c].clone();
                        d.data[i][c] = &s * &x + &t * &y;
                        d.data[j][c] = -&q * &x + &p * &y;
                    }
                    for c in 0..u.cols {
                        let x = u.data[i][c].clone();
                        let y = u.data[j][c].clone();
                        u.data[i][c] = &s * &x + &t * &y;
                        u.data[j][c] = -&q * &x + &p * &y;
                    }
                    // clear the leftover entry d[i][j] by a column op
                    let pivot = d.data[i][i].clone();
                    let qq = &d.data[i][j] / &pivot;
                    if !qq.is_zero() {
                        for r in 0..d.rows {
                            let sub = &qq * &d.data[r][i];
                            d.data[r][j] -= sub;
                        }
                        for r in 0..v.rows {
                            let sub = &qq * &v.data[r][i];
                            v.data[r][j] -= sub;
                        }
                        for c in 0..vinv.cols {
                            let add = &qq * &vinv.data[j][c];
                            vinv.data[i][c] += add;
                        }
                    }
                    if d.data[i][i].is_negative() {
                        for c in 0..d.cols {
                            d.data[i][c] = -d.data[i][c].clone();
                        }
                        for c in 0..u.cols {
                            u.data[i][c] = -u.data[i][c].clone();
                        }
                    }
                    if d.data[j][j].is_negative() {
                        for c in 0..d.cols {
                            d.data[j][c] = -d.data[j][c].clone();
                        }
                        for c in 0..u.cols {
                            u.data[j][c] = -u.data[j][c].clone();
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return (d, u, v, vinv);
        }
    }
}

/// Z-basis of (Q-span of the input rows) intersected with Z^n — the
/// saturation of the lattice they generate.
pub fn saturate(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::new(gens.to_vec());
    let r = m.rank();
    let (_, _, _, vinv) = snf(&m);
    // D = U M V of rank r  =>  Q-rowspan(M) = Q-span of first r rows of V^{-1},
    // and those rows are part of a Z-basis of Z^n, hence saturated.
    vinv.data[..r].to_vec()
}

/// Solves sum_j b_j * basis_j = v over Q, assuming the basis rows are
/// linearly independent.  Returns None if v is outside the Q-span.
pub fn solve_unique(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let r = basis.len();
    let n = v.len();
    assert!(basis.iter().all(|b| b.len() == n));
    if r == 0 {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    // augmented system: columns are basis vectors, last column v
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let piv = (row..n).find(|&i| !aug[i][col].is_zero());
        let Some(piv) = piv else { continue };
        aug.swap(row, piv);
        let inv = aug[row][col].recip();
        for c in col..=r {
            aug[row][c] = &aug[row][c] * &inv;
        }
        for i in 0..n {
            if i != row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for c in col..=r {
                    let sub = &f * &aug[row][c];
                    aug[i][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // inconsistent if any zero-row has nonzero rhs
    for i in row..n {
        if !aug[i][r].is_zero() {
            return None;
        }
    }
    if pivots.len() < r {
        // dependent basis rows — caller promised independence
        panic!("solve_unique: basis rows not independent");
    }
    Some((0..r).map(|j| aug[j][r].clone()).collect())
}

/// Span membership with ring constraint: find c_i in `ring` with
/// v = sum c_i gens_i, or None.
///
/// For Z and Z[1/M]: clear all denominators (membership is invariant under
/// the common rescaling), take an HNF Z-basis W of the integer generator
/// lattice — NOT its saturation — solve uniquely against W over Q, accept
/// iff every coordinate lies in the ring, and map coefficients back through
/// the HNF transform.
pub fn membership_over_ring(
    v: &[BigRational],
    gens: &[Vec<BigRational>],
    ring: &CoeffRing,
) -> Option<Vec<BigRational>> {
    let n = v.len();
    assert!(gens.iter().all(|g| g.len() == n), "dimension mismatch");
    if let CoeffRing::Q = ring {
        if gens.is_empty() {
            return v.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        // reduce to an independent subset, solve, lift back
        let mut indep: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            rows.push(g.clone());
            if rational_rank(&rows) == rows.len() {
                indep.push(i);
            } else {
                rows.pop();
            }
        }
        let b = solve_unique(&rows, v)?;
        let mut c = vec![BigRational::zero(); gens.len()];
        for (bi, &gi) in b.into_iter().zip(indep.iter()) {
            c[gi] = bi;
        }
        return Some(c);
    }
    // integral rings: clear denominators
    let mut lcm = BigInt::one();
    for x in v.iter().chain(gens.iter().flatten()) {
        lcm = lcm.lcm(x.denom());
    }
    let scale = BigRational::from(lcm);
    let vi: Vec<BigInt> = v.iter().map(|x| (x * &scale).to_integer()).collect();
    let gi: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();
    if gi.is_empty() {
        return vi.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let m = ExactMatrix::new(gi);
    let (h, u) = hnf(&m);
    let nonzero: Vec<usize> = (0..h.rows)
        .filter(|&i| h.data[i].iter().any(|x| !x.is_zero()))
        .collect();
    let w: Vec<Vec<BigRational>> = nonzero
        .iter()
        .map(|&i| h.data[i].iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let vq: Vec<BigRational> = vi.iter().map(|x| BigRational::from(x.clone())).collect();
    let b = solve_unique(&w, &vq)?;
    let ok = match ring {
        CoeffRing::Z => b.iter().all(|x| x.is_integer()),
        CoeffRing::ZInv(mm) => b.iter().all(|x| is_m_smooth(x.denom(), *mm)),
        CoeffRing::Q => unreachable!(),
    };
    if !ok {
        return None;
    }
    // v = sum_j b_j H_j = sum_j b_j (U M)_j  =>  c_i = sum_j b_j U[j][i]
    let mut c = vec![BigRational::zero(); gens.len()];
    for (bj, &j) in b.iter().zip(nonzero.iter()) {
        for (ci, uji) in c.iter_mut().zip(u.data[j].iter()) {
            *ci += bj * BigRational::from(uji.clone());
        }
    }
    Some(c)
}

/// Rank over Q of a list of rational row vectors.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut rank = 0;
    let mut col = 0;
    while rank < m.len() && col < n {
        let piv = (rank..m.len()).find(|&r| !m[r][col].is_zero());
        let Some(piv) = piv else {
            col += 1;
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in col..n {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(d: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(d)
    }

    fn det2(m: &ExactMatrix) -> BigInt {
        assert_eq!((m.rows, m.cols), (2, 2));
        &m.data[0][0] * &m.data[1][1] - &m.data[0][1] * &m.data[1][0]
    }

    #[test]
    fn hnf_examples() {
        // convention reduces the above-pivot entry: 3 -> 3 mod 2 = 1
        let (h, u) = hnf(&mat(&[&[2, 4], &[1, 3]]));
        assert_eq!(h, mat(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&mat(&[&[2, 4], &[1, 3]])), h);
        assert_eq!(det2(&u).magnitude(), BigInt::from(1).magnitude());

        let id = ExactMatrix::identity(3);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let z = mat(&[&[0, 0], &[0, 0]]);
        let (h, _) = hnf(&z);
        assert_eq!(h, z);
    }

    #[test]
    fn hnf_idempotent_and_reduced() {
        let m = mat(&[&[6, 9, 3], &[4, 8, 2], &[10, 5, 15]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m), h);
        let (h2, _) = hnf(&h);
        assert_eq!(h2, h);
        // pivots positive, entries above pivot in [0, pivot)
        let mut prev_col = None;
        for i in 0..h.rows {
            if let Some(j) = h.data[i].iter().position(|x| !x.is_zero()) {
                assert!(h.data[i][j].is_positive());
                if let Some(p) = prev_col {
                    assert!(j > p);
                }
                for r in 0..i {
                    assert!(!h.data[r][j].is_negative() && h.data[r][j] < h.data[i][j]);
                }
                prev_col = Some(j);
            }
        }
    }

    #[test]
    fn snf_examples() {
        let m = mat(&[&[2, 0], &[0, 3]]);
        let (d, u, v, vinv) = snf(&m);
        assert_eq!(d, mat(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).mul(&v), d);
        assert_eq!(v.mul(&vinv), ExactMatrix::identity(2));

        let m = mat(&[&[2, 0], &[0, 2]]);
        let (d, _, _, _) = snf(&m);
        assert_eq!(d, mat(&[&[2, 0], &[0, 2]]));

        let id = ExactMatrix::identity(4);
        let (d, _, _, _) = snf(&id);
        assert_eq!(d, id);
    }

    #[test]
    fn snf_random_consistency() {
        // pseudo-random small matrices; check D = UMV, transforms unimodular
        // (via V*Vinv = I), and the divisibility chain
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 21) as i64 - 10
        };
        for _ in 0..30 {
            let rows = 2 + (next().unsigned_abs() as usize % 3);
            let cols = 2 + (next().unsigned_abs() as usize % 3);
            let data: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(next())).collect())
                .collect();
            let m = ExactMatrix::new(data);
            let (d, u, v, vinv) = snf(&m);
            assert_eq!(u.mul(&m).mul(&v), d, "D = UMV");
            assert_eq!(v.mul(&vinv), ExactMatrix::identity(cols));
            let n = rows.min(cols);
            for i in 0..n {
                for j in 0..cols {
                    if i != j || j >= n {
                        if j < d.cols {
                            assert!(d.data[i][j].is_zero() || i == j);
                        }
                    }
                }
                assert!(!d.data[i][i].is_negative());
                if i + 1 < n && !d.data[i][i].is_zero() {
                    let (a, b) = (&d.data[i][i], &d.data[i + 1][i + 1]);
                    assert!((b % a).is_zero(), "chain {a} | {b}");
                }
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let sat = saturate(&[
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
        ]);
        let m = ExactMatrix::new(sat.clone());
        let (h, _) = hnf(&m);
        assert_eq!(h, ExactMatrix::identity(2));

        let sat = saturate(&[vec![BigInt::from(2), BigInt::from(4)]]);
        assert_eq!(sat.len(), 1);
        let g = sat[0][0].gcd(&sat[0][1]);
        assert!(g.is_one());
        // spans the same line as (1,2)
        assert!((&sat[0][1] - BigInt::from(2) * &sat[0][0]).is_zero());

        assert!(saturate(&[]).is_empty());
    }

    #[test]
    fn saturate_idempotent() {
        let gens = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(0), BigInt::from(6), BigInt::from(9)],
        ];
        let s1 = saturate(&gens);
        let s2 = saturate(&s1);
        let (h1, _) = hnf(&ExactMatrix::new(s1.clone()));
        let (h2, _) = hnf(&ExactMatrix::new(s2));
        assert_eq!(h1, h2);
        // same Q-span as input
        assert_eq!(ExactMatrix::new(s1.clone()).rank(), 2);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[0, 0], &[0, 0]]).rank(), 0);
    }

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn membership_basic() {
        let g1 = qv(&[2, 0, 4]);
        let g2 = qv(&[0, 3, 6]);
        let gens = vec![g1.clone(), g2.clone()];
        // v = g1
        let c = membership_over_ring(&g1, &gens, &CoeffRing::Z).unwrap();
        let mut rec = vec![BigRational::zero(); 3];
        for (ci, gi) in c.iter().zip(gens.iter()) {
            for (r, x) in rec.iter_mut().zip(gi.iter()) {
                *r += ci * x;
            }
        }
        assert_eq!(rec, g1);
        // v = g1/2: not in Z-span, in Z[1/2]-span
        let half: Vec<BigRational> = g1.iter().map(|x| x / q(2)).collect();
        assert!(membership_over_ring(&half, &gens, &CoeffRing::Z).is_none());
        assert!(membership_over_ring(&half, &gens, &CoeffRing::ZInv(2)).is_some());
        assert!(membership_over_ring(&half, &gens, &CoeffRing::ZInv(3)).is_none());
        // outside Q-span
        assert!(membership_over_ring(&qv(&[0, 0, 1]), &gens, &CoeffRing::Q).is_none());
    }

    #[test]
    fn membership_not_fooled_by_saturation() {
        // v = (1) with lattice 2Z: in Z[1/3]-span iff false (1/2 not 3-smooth);
        // a saturated basis would wrongly accept.
        let gens = vec![qv(&[2])];
        assert!(membership_over_ring(&qv(&[1]), &gens, &CoeffRing::ZInv(3)).is_none());
        assert!(membership_over_ring(&qv(&[1]), &gens, &CoeffRing::ZInv(2)).is_some());
    }

    #[test]
    fn membership_redundant_generators() {
        // dependent generators still work via the HNF basis
        let gens = vec![qv(&[2, 2]), qv(&[4, 4]), qv(&[0, 6])];
        let v = qv(&[2, 8]);
        let c = membership_over_ring(&v, &gens, &CoeffRing::Z).unwrap();
        let mut rec = vec![BigRational::zero(); 2];
        for (ci, gi) in c.iter().zip(gens.iter()) {
            for (r, x) in rec.iter_mut().zip(gi.iter()) {
                *r += ci * x;
            }
        }
        assert_eq!(rec, v);
        assert!(c.iter().all(|x| x.is_integer()));
    }

    #[test]
    fn membership_q_rank_characterization() {
        let gens = vec![qv(&[1, 2, 3]), qv(&[0, 1, 1])];
        let inside = qv(&[2, 5, 7]);
        let outside = qv(&[0, 0, 1]);
        assert!(membership_over_ring(&inside, &gens, &CoeffRing::Q).is_some());
        assert!(membership_over_ring(&outside, &gens, &CoeffRing::Q).is_none());
        let grows: Vec<Vec<BigRational>> = gens.clone();
        let mut with_v = grows.clone();
        with_v.push(inside);
        assert_eq!(rational_rank(&grows), rational_rank(&with_v));
    }
}
