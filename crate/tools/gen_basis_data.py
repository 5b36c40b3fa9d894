#!/usr/bin/env python3
"""Generate the bundled q-expansion data pack.

Computes exact rational echelon bases of S_k(Gamma_0(N)) for k in {2,4,6}
and N <= 30 via Manin-symbol modular symbols (sign/translation relations,
boundary map to cusp classes, Hecke action via continued-fraction path
conversion), plus the character Eisenstein series E_k^{chi,chibar}(tz)
needed at levels with a square factor f^2 | N.

Every space is cross-validated: dimensions against the classical formulas,
one-dimensional cusp spaces against eta-product expansions, Hecke
commutativity on samples, and Eisenstein supplements against the full
Eisenstein dimension.

Output: data/basis_pack.txt in the record format
    N k RING PREC : c0 c1 c2 ...
"""

from fractions import Fraction
from math import gcd, isqrt
import random
import sys
import time

PREC = 48
LEVELS = range(1, 31)
WEIGHTS = (2, 4, 6)


# ---------- small number theory ----------

def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, isqrt(n) + 1))


def primes_upto(n):
    return [p for p in range(2, n + 1) if is_prime(p)]


def factor(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def phi(n):
    r = n
    for p in set(factor(n)):
        r = r // p * (p - 1)
    return r


def nu2(n):
    if n % 4 == 0:
        return 0
    v = 1
    for p in set(factor(n)):
        if p == 2:
            continue
        if p % 4 == 3:
            return 0
        v *= 2
    return v


def nu3(n):
    if n % 9 == 0:
        return 0
    v = 1
    for p in set(factor(n)):
        if p == 3:
            continue
        if p % 3 == 2:
            return 0
        v *= 2
    return v


def index_g0(n):
    r = n
    for p in set(factor(n)):
        r = r // p * (p + 1)
    return r


def ncusps(n):
    return sum(phi(gcd(d, n // d)) for d in divisors(n))


def genus(n):
    g12 = 12 + index_g0(n) - 3 * nu2(n) - 4 * nu3(n) - 6 * ncusps(n)
    assert g12 % 12 == 0 and g12 >= 0
    return g12 // 12


def dim_mk(n, k):
    if k == 0:
        return 1
    g = genus(n)
    eps = ncusps(n)
    if k == 2:
        return g + eps - 1
    return (k - 1) * (g - 1) + (k // 4) * nu2(n) + (k // 3) * nu3(n) + (k // 2) * eps


def dim_sk(n, k):
    eis = (ncusps(n) - 1) if k == 2 else ncusps(n)
    return dim_mk(n, k) - eis


# ---------- P^1(Z/N) ----------

class P1:
    def __init__(self, n):
        self.n = n
        if n == 1:
            self.reps = [(0, 1)]
            self.index = {(0, 0): 0}
            self.units = [0]
            return
        self.units = [u for u in range(1, n) if gcd(u, n) == 1]
        self.index = {}
        self.reps = []
        for c in range(n):
            for d in range(n):
                if gcd(gcd(c, d), n) != 1:
                    continue
                key = (c, d)
                if key in self.index:
                    continue
                canon = min(((u * c) % n, (u * d) % n) for u in self.units)
                if canon in self.index:
                    self.index[key] = self.index[canon]
                else:
                    self.index[canon] = len(self.reps)
                    self.index[key] = len(self.reps)
                    self.reps.append(canon)

    def lookup(self, c, d):
        """Index of (c:d), or None if not primitive mod N."""
        n = self.n
        if n == 1:
            return 0
        key = (c % n, d % n)
        return self.index.get(key)


# ---------- homogeneous polynomials of degree k-2 ----------
# coefficient tuple c, P = sum c[i] X^i Y^(deg-i)

def poly_act(coeffs, mat):
    """(P|h)(X, Y) = P(aX + bY, cX + dY)."""
    a, b, c, d = mat
    deg = len(coeffs) - 1
    xa = [[1]]
    for i in range(1, deg + 1):
        prev = xa[-1]
        cur = [0] * (i + 1)
        for j, v in enumerate(prev):
            cur[j + 1] += v * a
            cur[j] += v * b
        xa.append(cur)
    yc = [[1]]
    for i in range(1, deg + 1):
        prev = yc[-1]
        cur = [0] * (i + 1)
        for j, v in enumerate(prev):
            cur[j + 1] += v * c
            cur[j] += v * d
        yc.append(cur)
    out = [0] * (deg + 1)
    for i in range(deg + 1):
        if coeffs[i] == 0:
            continue
        pa, pc = xa[i], yc[deg - i]
        for j1, v1 in enumerate(pa):
            if v1 == 0:
                continue
            for j2, v2 in enumerate(pc):
                if v2 == 0:
                    continue
                out[j1 + j2] += coeffs[i] * v1 * v2
    return tuple(out)


# ---------- sparse exact row reduction ----------

def sparse_rref(rows, prefer_small=True):
    """Gauss-Jordan on sparse dict rows; returns {pivot_col: row_dict} with
    each row normalized (pivot coefficient 1) and fully reduced."""
    pivot_rows = {}
    for r in rows:
        r = dict(r)
        while True:
            r = {c: v for c, v in r.items() if v != 0}
            hit = [c for c in r if c in pivot_rows]
            if not hit:
                break
            for lead in hit:
                f = r.get(lead, 0)
                if f == 0:
                    continue
                for c, v in pivot_rows[lead].items():
                    r[c] = r.get(c, 0) - f * v
        if not r:
            continue
        lead = min(r)
        inv = Fraction(1, 1) / r[lead]
        r = {c: v * inv for c, v in r.items()}
        for pc, pr in pivot_rows.items():
            if lead in pr:
                f = pr[lead]
                for c, v in r.items():
                    pr[c] = pr.get(c, 0) - f * v
                pivot_rows[pc] = {c: v for c, v in pr.items() if v != 0}
        pivot_rows[lead] = r
    return pivot_rows


def rref_dense(rows):
    """Dense RREF; returns (pivot columns, reduced nonzero rows)."""
    rows = [r[:] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    out = []
    for col in range(ncols):
        piv = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if piv is None:
            continue
        prow = rows.pop(piv)
        inv = Fraction(1) / prow[col]
        prow = [v * inv for v in prow]
        rows = [[a - r[col] * b for a, b in zip(r, prow)] if r[col] else r for r in rows]
        out = [[a - r[col] * b for a, b in zip(r, prow)] if r[col] else r for r in out]
        out.append(prow)
        pivots.append(col)
    return pivots, out


# ---------- modular symbol space ----------

SIGMA = (0, -1, 1, 0)
TAU = (0, -1, 1, -1)
TAU2 = (-1, 1, -1, 0)


class MSSpace:
    def __init__(self, n, k):
        self.n = n
        self.k = k
        self.deg = k - 2
        self.p1 = P1(n)
        self.np1 = len(self.p1.reps)
        self.nsym = (self.deg + 1) * self.np1
        self._build_quotient()
        self._build_boundary()

    def sym(self, i, x):
        return i * self.np1 + x

    def _manin_act(self, i, x, h):
        c0, d0 = self.p1.reps[x]
        a, b, c, d = h
        x2 = self.p1.lookup(c0 * a + d0 * c, c0 * b + d0 * d)
        assert x2 is not None
        mono = [0] * (self.deg + 1)
        mono[i] = 1
        row = {}
        for j, v in enumerate(poly_act(tuple(mono), h)):
            if v:
                s = self.sym(j, x2)
                row[s] = row.get(s, 0) + v
        return row

    def _build_quotient(self):
        rel = []
        for i in range(self.deg + 1):
            for x in range(self.np1):
                r1 = {self.sym(i, x): 1}
                for kk, v in self._manin_act(i, x, SIGMA).items():
                    r1[kk] = r1.get(kk, 0) + v
                rel.append(r1)
                r2 = {self.sym(i, x): 1}
                for h in (TAU, TAU2):
                    for kk, v in self._manin_act(i, x, h).items():
                        r2[kk] = r2.get(kk, 0) + v
                rel.append(r2)
        pivot_rows = sparse_rref(rel)
        pivots = set(pivot_rows)
        self.free = [c for c in range(self.nsym) if c not in pivots]
        self.free_index = {c: i for i, c in enumerate(self.free)}
        # pivot symbol -> sparse expression in free symbols
        self.pivot_expr = {
            pc: {c: -v for c, v in pr.items() if c != pc}
            for pc, pr in pivot_rows.items()
        }
        self.dim = len(self.free)

    def project(self, row):
        """sparse ambient row -> dense quotient coordinates."""
        out = [Fraction(0)] * self.dim
        fi = self.free_index
        pe = self.pivot_expr
        for c, v in row.items():
            if v == 0:
                continue
            j = fi.get(c)
            if j is not None:
                out[j] += v
            else:
                for c2, e in pe[c].items():
                    out[fi[c2]] += v * e
        return out

    def _lift(self, x):
        """Lift (c:d) to SL_2(Z)."""
        c0, d0 = self.p1.reps[x]
        n = self.n
        if n == 1:
            return (1, 0, 0, 1)
        if c0 % n == 0:
            return (1, 0, 0, 1) if d0 % n == 1 else self._lift_search(c0, d0)
        return self._lift_search(c0, d0)

    def _lift_search(self, c0, d0):
        n = self.n
        for t in range(0, 8 * n + 2):
            for d in (d0 + t * n, d0 - t * n):
                for c in (c0, c0 + n):
                    if gcd(c, d) == 1:
                        a, b = bezout(d, c)
                        assert a * d - b * c == 1
                        return (a, b, c, d)
        raise RuntimeError(f"lift failed for ({c0}:{d0}) mod {n}")

    # ----- path conversion -----

    def inf_path(self, coeffs, x, acc):
        """Accumulate P{infinity, x} into sparse ambient dict `acc`."""
        if x is None:
            return
        p, q = x.numerator, x.denominator
        cf = []
        u, v = p, q
        while v:
            cf.append(u // v)
            u, v = v, u - (u // v) * v
        conv = [(1, 0)]
        pp, qq, pprev, qprev = 1, 0, 0, 1
        for a0 in cf:
            pp, pprev = a0 * pp + pprev, pp
            qq, qprev = a0 * qq + qprev, qq
            conv.append((pp, qq))
        assert conv[-1] == (p, q)
        for t in range(1, len(conv)):
            pj, qj = conv[t]
            pj1, qj1 = conv[t - 1]
            e = 1 if t % 2 == 0 else -1  # (-1)^(m-1) with m = t-1
            g = (e * pj, pj1, e * qj, qj1)
            assert g[0] * g[3] - g[1] * g[2] == 1
            x2 = self.p1.lookup(g[2], g[3])
            for i, vv in enumerate(poly_act(coeffs, g)):
                if vv:
                    s = self.sym(i, x2)
                    acc[s] = acc.get(s, 0) + vv

    # ----- boundary and cuspidal subspace -----

    def _cusp_class(self, p, q):
        for i, (p2, q2) in enumerate(self.cusp_reps):
            if cusp_equiv(self.n, p, q, p2, q2):
                return i
        self.cusp_reps.append((p, q))
        return len(self.cusp_reps) - 1

    def _build_boundary(self):
        self.cusp_reps = []
        ents = []
        for csym in self.free:
            i, x = divmod(csym, self.np1)
            a, b, cc, d = self._lift(x)
            ent = {}
            # boundary [P, g] = P(1,0)[a/c] - P(0,1)[b/d]
            if i == self.deg:
                cl = self._cusp_class(*norm_cusp(a, cc))
                ent[cl] = ent.get(cl, 0) + 1
            if i == 0:
                cl = self._cusp_class(*norm_cusp(b, d))
                ent[cl] = ent.get(cl, 0) - 1
            ents.append(ent)
        ncl = len(self.cusp_reps)
        self.boundary = [
            [Fraction(ent.get(cl, 0)) for cl in range(ncl)] for ent in ents
        ]

    def cuspidal_basis(self):
        """Rows spanning ker(boundary) in quotient coordinates."""
        nrows = len(self.boundary)
        ncl = len(self.cusp_reps)
        if ncl == 0:
            return [[Fraction(1 if i == j else 0) for j in range(nrows)] for i in range(nrows)]
        cols = [[self.boundary[i][j] for i in range(nrows)] for j in range(ncl)]
        pivots, rr = rref_dense(cols)
        pivset = set(pivots)
        basis = []
        for freec in range(nrows):
            if freec in pivset:
                continue
            vec = [Fraction(0)] * nrows
            vec[freec] = Fraction(1)
            for prow, pcol in zip(rr, pivots):
                vec[pcol] = -prow[freec]
            basis.append(vec)
        return basis

    # ----- Hecke -----

    def hecke_matrix(self, p):
        """Matrix of T_p (or U_p for p | N) on the quotient; row j = image of
        free generator j."""
        mats = [(1, r, 0, p) for r in range(p)]
        if self.n % p != 0:
            mats.append((p, 0, 0, 1))
        out = []
        for csym in self.free:
            i, x = divmod(csym, self.np1)
            a, b, cc, d = self._lift(x)
            alpha = None if cc == 0 else Fraction(a, cc)  # g(infinity)
            beta = None if d == 0 else Fraction(b, d)     # g(0)
            mono = [0] * (self.deg + 1)
            mono[i] = 1
            # [P, g] is the modular symbol (P|g^-1){g0, g_inf}
            q0 = poly_act(tuple(mono), (d, -b, -cc, a))
            acc = {}
            for m in mats:
                ma, mb, mc, md = m
                adj = (md, -mb, -mc, ma)
                pc = poly_act(q0, adj)
                na = mob(m, beta)
                nb = mob(m, alpha)
                # P{na, nb} = P{infinity, nb} - P{infinity, na}
                self.inf_path(pc, nb, acc)
                neg = {}
                self.inf_path(pc, na, neg)
                for s, v in neg.items():
                    acc[s] = acc.get(s, 0) - v
            out.append(self.project(acc))
        return out


def mob(m, x):
    a, b, c, d = m
    if x is None:
        return None if c == 0 else Fraction(a, c)
    num = a * x.numerator + b * x.denominator
    den = c * x.numerator + d * x.denominator
    if den == 0:
        return None
    return Fraction(num, den)


def bezout(d, c):
    """(a, b) with a*d - b*c = 1, given gcd(c, d) = 1."""
    old_r, r = d, c
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r == 1:
        return old_s, -old_t
    return -old_s, old_t


def norm_cusp(p, q):
    if q < 0:
        p, q = -p, -q
    g = gcd(abs(p), q)
    if g:
        p, q = p // g, q // g
    if q == 0:
        p = 1
    return p, q


def cusp_equiv(n, p1, q1, p2, q2):
    if q1 == 0:
        p1, q1 = 1, n
    if q2 == 0:
        p2, q2 = 1, n
    s1 = pow(p1, -1, q1) if q1 > 1 else 0
    s2 = pow(p2, -1, q2) if q2 > 1 else 0
    g = gcd(q1 * q2, n)
    return (s1 * q2 - s2 * q1) % g == 0


def mat_vec(mat, vec):
    """vec * mat with row-convention (image of e_j = mat[j])."""
    if not mat:
        return []
    ncols = len(mat[0])
    out = [Fraction(0)] * ncols
    for j, vj in enumerate(vec):
        if vj:
            row = mat[j]
            for t in range(ncols):
                if row[t]:
                    out[t] += vj * row[t]
    return out


# ---------- cusp form bases ----------

def cusp_basis_qexp(n, k, prec):
    d = dim_sk(n, k)
    if d == 0:
        return []
    sp = MSSpace(n, k)
    cusp = sp.cuspidal_basis()
    assert len(cusp) == 2 * d, f"cuspidal dim {len(cusp)} != {2*d} at N={n} k={k}"
    primes = primes_upto(prec - 1)
    tp = {p: sp.hecke_matrix(p) for p in primes}
    if len(primes) >= 2:
        a, b = tp[2], tp[3]
        ab = [mat_vec(b, row) for row in a]
        ba = [mat_vec(a, row) for row in b]
        assert ab == ba, f"T_2 T_3 != T_3 T_2 at N={n} k={k}"

    rng = random.Random(20260826 + 100 * n + k)
    series = []
    for attempt in range(8):
        cmb = [rng.randrange(-5, 6) for _ in cusp]
        v0 = [
            sum(cmb[j] * cusp[j][t] for j in range(len(cusp)))
            for t in range(sp.dim)
        ]
        vecs = {1: v0}
        for m in range(2, prec):
            p = min(factor(m))
            if m % (p * p) == 0 and n % p != 0:
                tv = mat_vec(tp[p], vecs[m // p])
                corr = p ** (k - 1)
                vecs[m] = [x - corr * y for x, y in zip(tv, vecs[m // (p * p)])]
            else:
                vecs[m] = mat_vec(tp[p], vecs[m // p])
        for _ in range(2 * d + 2):
            wf = [Fraction(rng.randrange(-5, 6)) for _ in range(sp.dim)]
            s = [Fraction(0)] + [
                sum(a2 * b2 for a2, b2 in zip(wf, vecs[m])) for m in range(1, prec)
            ]
            series.append(s)
        _, rr = rref_dense(series)
        assert len(rr) <= d, f"rank {len(rr)} > dim {d} at N={n} k={k}"
        if len(rr) == d:
            return rr
        series = rr
    raise AssertionError(f"could not span S_{k}(Gamma_0({n}))")


# ---------- character Eisenstein supplements ----------

def dirichlet_chars_primitive(f):
    """Nontrivial primitive characters mod f (f in {3,4,5}) as value lists of
    (re, im) pairs."""
    if f == 3:
        return [[(0, 0), (1, 0), (-1, 0)]]
    if f == 4:
        return [[(0, 0), (1, 0), (0, 0), (-1, 0)]]
    if f == 5:
        chars = []
        for j in (1, 2, 3):
            vals = [(0, 0)] * 5
            x = 1
            for a in range(4):
                vals[x] = [(1, 0), (0, 1), (-1, 0), (0, -1)][(j * a) % 4]
                x = (x * 2) % 5
            chars.append(vals)
        return chars
    raise ValueError(f)


def conj_index(chars, ci):
    conj = [(r, -i) for (r, i) in chars[ci]]
    for j, ch in enumerate(chars):
        if ch == conj:
            return j
    return ci


def eis_char_qexp(f, k, prec, chi):
    """E_k^{chi, chibar}: a_n = sum_{d|n} chi(n/d) conj(chi)(d) d^(k-1)."""
    re = [Fraction(0)] * prec
    im = [Fraction(0)] * prec
    for n in range(1, prec):
        sr, si = Fraction(0), Fraction(0)
        for d in divisors(n):
            cr, ci = chi[(n // d) % f]
            br, bi = chi[d % f]
            bi = -bi
            dk = d ** (k - 1)
            sr += (cr * br - ci * bi) * dk
            si += (cr * bi + ci * br) * dk
        re[n], im[n] = sr, si
    return re, im


def char_eis_supplements(n, k, prec):
    out = []
    for f in (3, 4, 5):
        if n % (f * f) != 0:
            continue
        chars = dirichlet_chars_primitive(f)
        done = set()
        for ci in range(len(chars)):
            key = tuple(sorted([ci, conj_index(chars, ci)]))
            if key in done:
                continue
            done.add(key)
            re, im = eis_char_qexp(f, k, prec, chars[ci])
            for t in divisors(n // (f * f)):
                for src in (re, im):
                    if all(x == 0 for x in src):
                        continue
                    vec = [Fraction(0)] * prec
                    for m in range(prec):
                        if m * t < prec:
                            vec[m * t] = src[m]
                    out.append(vec)
    return out


def trivial_eis_vectors(n, k, prec):
    """Builtin Eisenstein span: E_k(tz) for t | N (k >= 4); the normalized
    weight-2 combinations for k = 2.  Used only for validation here."""
    def sigma(m, pw):
        return sum(d ** pw for d in divisors(m))

    out = []
    if k >= 4:
        bfrac = {4: Fraction(-1, 240), 6: Fraction(1, 504)}[k]
        for t in divisors(n):
            vec = [Fraction(0)] * prec
            vec[0] = bfrac
            for m in range(1, prec):
                if m * t < prec:
                    vec[m * t] = Fraction(sigma(m, k - 1))
            out.append(vec)
    else:
        for t in divisors(n):
            if t == 1:
                continue
            vec = [Fraction(0)] * prec
            vec[0] = Fraction(1)
            for m in range(1, prec):
                if m * t < prec:
                    vec[m * t] += Fraction(24 * t, t - 1) * sigma(m, 1)
                if m < prec:
                    vec[m] += Fraction(-24, t - 1) * sigma(m, 1)
            out.append(vec)
    return out


# ---------- eta products (validation oracles) ----------

def eta_product(exps, prec):
    shift = sum(d * r for d, r in exps.items())
    assert shift % 24 == 0
    shift //= 24
    coeffs = [Fraction(0)] * prec
    coeffs[0] = Fraction(1)
    for d, r in exps.items():
        base = [Fraction(0)] * prec
        kk = 0
        while True:
            hit = False
            for s in (kk, -kk):
                e = s * (3 * s - 1) // 2 * d
                if 0 <= e < prec:
                    base[e] = Fraction((-1) ** (s % 2))
                    hit = True
                if s == 0:
                    break
            if not hit and kk > 0:
                break
            kk += 1
        powd = base
        for _ in range(abs(r) - 1):
            powd = mul_trunc(powd, base, prec)
        if r < 0:
            powd = inv_series(powd, prec)
        coeffs = mul_trunc(coeffs, powd, prec)
    out = [Fraction(0)] * prec
    for i, c in enumerate(coeffs):
        if i + shift < prec:
            out[i + shift] = c
    return out


def mul_trunc(a, b, prec):
    out = [Fraction(0)] * prec
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(prec - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def inv_series(a, prec):
    assert a[0] != 0
    out = [Fraction(0)] * prec
    out[0] = 1 / a[0]
    for m in range(1, prec):
        s = sum(a[t] * out[m - t] for t in range(1, m + 1))
        out[m] = -out[0] * s
    return out


# ---------- output ----------

def fmt_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def emit(fh, n, k, vec):
    fh.write(f"{n} {k} Q {len(vec)} : " + " ".join(fmt_coeff(c) for c in vec) + "\n")


KNOWN_ETA = {
    (11, 2): {1: 2, 11: 2},
    (14, 2): {1: 1, 2: 1, 7: 1, 14: 1},
    (15, 2): {1: 1, 3: 1, 5: 1, 15: 1},
    (20, 2): {2: 2, 10: 2},
    (5, 4): {1: 4, 5: 4},
    (6, 4): {1: 2, 2: 2, 3: 2, 6: 2},
    (3, 6): {1: 6, 3: 6},
}


def main():
    t0 = time.time()
    validations = 0
    with open("data/basis_pack.txt", "w") as out:
        out.write("# q-expansion data pack: cusp form bases of S_k(Gamma_0(N)) and\n")
        out.write("# nontrivial-character Eisenstein supplements, exact over Q.\n")
        out.write("# Generated by tools/gen_basis_data.py (deterministic).\n")
        for n in LEVELS:
            for k in WEIGHTS:
                d = dim_sk(n, k)
                basis = cusp_basis_qexp(n, k, PREC) if d else []
                assert len(basis) == d, (n, k, len(basis), d)
                if (n, k) in KNOWN_ETA:
                    assert d == 1
                    eta = eta_product(KNOWN_ETA[(n, k)], PREC)
                    assert basis[0] == eta, f"eta mismatch at N={n} k={k}"
                    validations += 1
                supp = char_eis_supplements(n, k, PREC)
                if supp:
                    # combined Eisenstein span must reach the full dimension
                    eis = trivial_eis_vectors(n, k, PREC) + supp
                    want = ncusps(n) - (1 if k == 2 else 0)
                    _, rr = rref_dense(eis)
                    assert len(rr) == want, \
                        f"Eisenstein rank {len(rr)} != {want} at N={n} k={k}"
                for vec in basis:
                    emit(out, n, k, vec)
                for vec in supp:
                    emit(out, n, k, vec)
                print(f"N={n} k={k}: {d} cusp, {len(supp)} eis-supp "
                      f"[{time.time()-t0:.1f}s]", flush=True)
    print(f"done; {validations} eta validations passed")


if __name__ == "__main__":
    sys.exit(main())
