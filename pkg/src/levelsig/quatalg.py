"""The quaternion algebra B_{p,oo} with i^2 = -1, j^2 = -p, k = ij.

Elements, rank-4 lattices in canonical Hermite form, orders, left ideals,
ideal algebra (products, intersections, chi-equivalence, pullback and
pushforward), and certified lattice reduction under the degree form.

All arithmetic is exact: quaternions are integer 4-vectors over a common
denominator, lattices are integer 4x4 row matrices in HNF over a common
denominator. Values are immutable and safe to share.
"""
from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .numth import FactoredInt, is_prime, sqrt_mod


class AlgebraParams:
    """Parameters of B_{p,oo}: a prime p = 3 mod 4."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("p must be prime")
        if p % 4 != 3:
            raise ValueError("p must be 3 mod 4")
        self.p = p

    def __repr__(self):
        return f"AlgebraParams(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, AlgebraParams) and self.p == other.p

    def __hash__(self):
        return hash(("AlgebraParams", self.p))

    def quaternion(self, a, b=0, c=0, d=0) -> "Quaternion":
        return Quaternion.from_fractions(self.p, a, b, c, d)

    def one(self) -> "Quaternion":
        return Quaternion(self.p, 1, 0, 0, 0, 1)

    def i(self) -> "Quaternion":
        return Quaternion(self.p, 0, 1, 0, 0, 1)

    def j(self) -> "Quaternion":
        return Quaternion(self.p, 0, 0, 1, 0, 1)

    def k(self) -> "Quaternion":
        return Quaternion(self.p, 0, 0, 0, 1, 1)


class Quaternion:
    """Element (a + b*i + c*j + d*k)/r of B_{p,oo}, in lowest terms, r > 0."""

    __slots__ = ("p", "a", "b", "c", "d", "r")

    def __init__(self, p: int, a: int, b: int, c: int, d: int, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("zero denominator")
        if r < 0:
            a, b, c, d, r = -a, -b, -c, -d, -r
        g = math.gcd(math.gcd(math.gcd(a, b), math.gcd(c, d)), r)
        if g > 1:
            a //= g
            b //= g
            c //= g
            d //= g
            r //= g
        self.p = p
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.r = r

    @classmethod
    def from_fractions(cls, p: int, a, b=0, c=0, d=0) -> "Quaternion":
        fa, fb, fc, fd = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        r = math.lcm(fa.denominator, fb.denominator, fc.denominator, fd.denominator)
        return cls(p, int(fa * r), int(fb * r), int(fc * r), int(fd * r), r)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        r = self.r
        return (Fraction(self.a, r), Fraction(self.b, r),
                Fraction(self.c, r), Fraction(self.d, r))

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return (self.p, self.a, self.b, self.c, self.d, self.r) == \
               (other.p, other.a, other.b, other.c, other.d, other.r)

    def __hash__(self):
        return hash((self.p, self.a, self.b, self.c, self.d, self.r))

    def __repr__(self):
        s = f"({self.a} + {self.b}i + {self.c}j + {self.d}k)"
        return s if self.r == 1 else s + f"/{self.r}"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def __add__(self, other: "Quaternion") -> "Quaternion":
        r1, r2 = self.r, other.r
        return Quaternion(self.p, self.a * r2 + other.a * r1,
                          self.b * r2 + other.b * r1,
                          self.c * r2 + other.c * r1,
                          self.d * r2 + other.d * r1, r1 * r2)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return self + (-other)

    def __neg__(self) -> "Quaternion":
        return Quaternion(self.p, -self.a, -self.b, -self.c, -self.d, self.r)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            p = self.p
            a1, b1, c1, d1 = self.a, self.b, self.c, self.d
            a2, b2, c2, d2 = other.a, other.b, other.c, other.d
            return Quaternion(
                p,
                a1 * a2 - b1 * b2 - p * c1 * c2 - p * d1 * d2,
                a1 * b2 + b1 * a2 + p * c1 * d2 - p * d1 * c2,
                a1 * c2 + c1 * a2 - b1 * d2 + d1 * b2,
                a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
                self.r * other.r,
            )
        return self.scale(other)

    def __rmul__(self, other) -> "Quaternion":
        return self.scale(other)

    def scale(self, s) -> "Quaternion":
        f = Fraction(s)
        return Quaternion(self.p, self.a * f.numerator, self.b * f.numerator,
                          self.c * f.numerator, self.d * f.numerator,
                          self.r * f.denominator)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.p, self.a, -self.b, -self.c, -self.d, self.r)

    def reduced_norm(self) -> Fraction:
        s = self.a * self.a + self.b * self.b + self.p * (self.c * self.c + self.d * self.d)
        return Fraction(s, self.r * self.r)

    def norm_int(self) -> int:
        n = self.reduced_norm()
        if n.denominator != 1:
            raise ValueError(f"norm {n} is not an integer")
        return n.numerator

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.r)

    def inverse(self) -> "Quaternion":
        s = self.a * self.a + self.b * self.b + self.p * (self.c * self.c + self.d * self.d)
        if s == 0:
            raise ZeroDivisionError("inverting zero quaternion")
        return Quaternion(self.p, self.a * self.r, -self.b * self.r,
                          -self.c * self.r, -self.d * self.r, s)

    def is_integral_for(self) -> bool:
        """Trace and norm both integers."""
        return self.trace().denominator == 1 and self.reduced_norm().denominator == 1


def reduced_norm(q: Quaternion) -> Fraction:
    """n(q) = a^2 + b^2 + p(c^2 + d^2); multiplicative."""
    return q.reduced_norm()


def polar_pairing(u: Quaternion, v: Quaternion) -> Fraction:
    """tr(u * conj(v)) = n(u+v) - n(u) - n(v); twice the degree-form inner product."""
    return (u * v.conjugate()).trace()


# ---------------------------------------------------------------------------
# integer matrix helpers (rows are vectors)
# ---------------------------------------------------------------------------

def _hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (upper triangular, positive pivots, reduced above)."""
    m = [list(r) for r in rows if any(r)]
    n = 4
    res: list[list[int]] = []
    col = 0
    while col < n and m:
        pivot_rows = [r for r in m if r[col] != 0]
        if not pivot_rows:
            col += 1
            continue
        while True:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            piv = pivot_rows[0]
            done = True
            for r in pivot_rows[1:]:
                q = r[col] // piv[col]
                for t in range(n):
                    r[t] -= q * piv[t]
                if r[col] != 0:
                    done = False
            pivot_rows = [piv] + [r for r in pivot_rows[1:] if r[col] != 0]
            if done or len(pivot_rows) == 1:
                break
        if piv[col] < 0:
            for t in range(n):
                piv[t] = -piv[t]
        res.append(piv)
        m = [r for r in m if r is not piv and any(r)]
        col += 1
    # reduce entries above each pivot
    for irow in range(len(res) - 1, -1, -1):
        pcol = next(t for t in range(n) if res[irow][t] != 0)
        pv = res[irow][pcol]
        for jrow in range(irow):
            q = res[jrow][pcol] // pv
            if q:
                for t in range(n):
                    res[jrow][t] -= q * res[irow][t]
    return res


def _det4(m: Sequence[Sequence[int]]) -> int:
    # Laplace on 4x4 via 2x2 complements
    a = m
    def d2(i1, i2, j1, j2):
        return a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1]
    return (d2(0, 1, 0, 1) * d2(2, 3, 2, 3)
            - d2(0, 1, 0, 2) * d2(2, 3, 1, 3)
            + d2(0, 1, 0, 3) * d2(2, 3, 1, 2)
            + d2(0, 1, 1, 2) * d2(2, 3, 0, 3)
            - d2(0, 1, 1, 3) * d2(2, 3, 0, 2)
            + d2(0, 1, 2, 3) * d2(2, 3, 0, 1))


def _solve_upper(h: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list[Fraction]]:
    """Solve x * h = v for full-rank upper-triangular h (rational)."""
    x = [Fraction(0)] * 4
    rem = [Fraction(t) for t in v]
    for idx in range(4):
        if h[idx][idx] == 0:
            return None
        x[idx] = rem[idx] / h[idx][idx]
        if x[idx]:
            for t in range(idx, 4):
                rem[t] -= x[idx] * h[idx][t]
    if any(rem):
        return None
    return x


def _kernel_int(rows: list[list[int]]) -> list[list[int]]:
    """Basis of the left integer kernel {u : u * rows = 0}."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    # work on [rows | I_m], column-reduce rows part via row ops
    work = [list(rows[i]) + [1 if t == i else 0 for t in range(m)] for i in range(m)]
    col = 0
    row = 0
    while col < n and row < m:
        # find pivot
        cand = [i for i in range(row, m) if work[i][col] != 0]
        if not cand:
            col += 1
            continue
        while len(cand) > 1:
            cand.sort(key=lambda i: abs(work[i][col]))
            piv = cand[0]
            newc = [piv]
            for i in cand[1:]:
                q = work[i][col] // work[piv][col]
                for t in range(n + m):
                    work[i][t] -= q * work[piv][t]
                if work[i][col] != 0:
                    newc.append(i)
            cand = newc
        piv = cand[0]
        work[row], work[piv] = work[piv], work[row]
        for i in range(m):
            if i != row and work[i][col] != 0:
                q = work[i][col] // work[row][col]
                if q:
                    for t in range(n + m):
                        work[i][t] -= q * work[row][t]
        row += 1
        col += 1
    # rows with zero image part give kernel vectors
    out = []
    for i in range(m):
        if not any(work[i][:n]):
            out.append(work[i][n:])
    return out


class QuatLattice:
    """Full-rank lattice in B_{p,oo}: integer 4x4 HNF matrix over denominator."""

    __slots__ = ("p", "mat", "den")

    def __init__(self, p: int, mat: Sequence[Sequence[int]], den: int = 1, *,
                 _canonical: bool = False):
        self.p = p
        if _canonical:
            self.mat = tuple(tuple(r) for r in mat)
            self.den = den
            return
        if den < 0:
            den = -den
            mat = [[-x for x in row] for row in mat]
        h = _hnf([list(r) for r in mat])
        if len(h) != 4:
            raise ValueError("lattice is not full rank")
        g = den
        for row in h:
            for x in row:
                g = math.gcd(g, x)
        if g > 1:
            h = [[x // g for x in row] for row in h]
            den //= g
        self.mat = tuple(tuple(r) for r in h)
        self.den = den

    @classmethod
    def from_quaternions(cls, p: int, gens: Sequence[Quaternion]) -> "QuatLattice":
        den = math.lcm(*[q.r for q in gens]) if gens else 1
        rows = []
        for q in gens:
            s = den // q.r
            rows.append([q.a * s, q.b * s, q.c * s, q.d * s])
        return cls(p, rows, den)

    def basis(self) -> tuple[Quaternion, ...]:
        return tuple(Quaternion(self.p, *row, self.den) for row in self.mat)

    def __eq__(self, other):
        if not isinstance(other, QuatLattice):
            return NotImplemented
        return (self.p, self.den, self.mat) == (other.p, other.den, other.mat)

    def __hash__(self):
        return hash((self.p, self.den, self.mat))

    def __repr__(self):
        return f"QuatLattice(p={self.p}, den={self.den}, mat={self.mat})"

    def det(self) -> Fraction:
        return Fraction(abs(_det4(self.mat)), self.den ** 4)

    def covolume(self) -> Fraction:
        """Square root of the Gram determinant under the degree form."""
        return self.det() * self.p

    def contains(self, q: Quaternion) -> bool:
        if q.p != self.p:
            return False
        v = [Fraction(x, q.r) * self.den for x in (q.a, q.b, q.c, q.d)]
        x = _solve_upper(self.mat, v)
        return x is not None and all(t.denominator == 1 for t in x)

    def coordinates_of(self, q: Quaternion) -> Optional[tuple[Fraction, ...]]:
        v = [Fraction(x, q.r) * self.den for x in (q.a, q.b, q.c, q.d)]
        x = _solve_upper(self.mat, v)
        return tuple(x) if x is not None else None

    def contains_lattice(self, other: "QuatLattice") -> bool:
        return all(self.contains(b) for b in other.basis())

    def index_in(self, super_lattice: "QuatLattice") -> int:
        """[super : self] as an exact integer (self must be a sublattice)."""
        ratio = self.det() / super_lattice.det()
        if ratio.denominator != 1:
            raise ValueError("not a sublattice (non-integral index)")
        return ratio.numerator

    def add(self, other: "QuatLattice") -> "QuatLattice":
        den = math.lcm(self.den, other.den)
        rows = [[x * (den // self.den) for x in r] for r in self.mat]
        rows += [[x * (den // other.den) for x in r] for r in other.mat]
        return QuatLattice(self.p, rows, den)

    def intersect(self, other: "QuatLattice") -> "QuatLattice":
        den = math.lcm(self.den, other.den)
        a = [[x * (den // self.den) for x in r] for r in self.mat]
        b = [[-x * (den // other.den) for x in r] for r in other.mat]
        ker = _kernel_int(a + b)
        rows = []
        for u in ker:
            rows.append([sum(u[i] * a[i][t] for i in range(4)) for t in range(4)])
        return QuatLattice(self.p, rows, den)

    def scale(self, s) -> "QuatLattice":
        f = Fraction(s)
        rows = [[x * f.numerator for x in r] for r in self.mat]
        return QuatLattice(self.p, rows, self.den * f.denominator)

    def mul_left(self, q: Quaternion) -> "QuatLattice":
        """Lattice q * L."""
        return QuatLattice.from_quaternions(self.p, [q * b for b in self.basis()])

    def mul_right(self, q: Quaternion) -> "QuatLattice":
        """Lattice L * q."""
        return QuatLattice.from_quaternions(self.p, [b * q for b in self.basis()])

    def mul_lattice(self, other: "QuatLattice") -> "QuatLattice":
        gens = [x * y for x in self.basis() for y in other.basis()]
        return QuatLattice.from_quaternions(self.p, gens)

    def conjugate(self) -> "QuatLattice":
        return QuatLattice.from_quaternions(self.p, [b.conjugate() for b in self.basis()])

    def norm_form_gcd(self) -> int:
        """gcd of the reduced norms of all lattice elements (content of the form)."""
        b = self.basis()
        vals = []
        for i in range(4):
            vals.append(b[i].reduced_norm())
            for j in range(i + 1, 4):
                vals.append(polar_pairing(b[i], b[j]))
        L = math.lcm(*[v.denominator for v in vals])
        g = 0
        for v in vals:
            g = math.gcd(g, int(v * L))
        res = Fraction(g, L)
        if res.denominator != 1:
            raise ValueError("norm form not integral on this lattice")
        return res.numerator

    def gram_int(self) -> tuple[list[list[int]], int]:
        """Integer Gram matrix of the numerator rows under diag(1,1,p,p), and
        the scale den^2 so that true Gram = gram/scale."""
        w = (1, 1, self.p, self.p)
        g = [[sum(w[t] * self.mat[i][t] * self.mat[j][t] for t in range(4))
              for j in range(4)] for i in range(4)]
        return g, self.den * self.den

    def to_json_dict(self) -> dict:
        return {"p": self.p, "den": self.den, "mat": [list(r) for r in self.mat]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "QuatLattice":
        return cls(d["p"], d["mat"], d["den"])


# ---------------------------------------------------------------------------
# reduction: LLL over the degree form + exact enumeration of minima
# ---------------------------------------------------------------------------

def _lll_gram(g: list[list[int]]) -> list[list[int]]:
    """LLL-reduce the integral Gram form; returns the unimodular transform rows."""
    n = 4
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def ip(x, y):
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n))

    def gso():
        star = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            vi = [Fraction(t) for t in u[i]]
            for j in range(i):
                if norms[j] == 0:
                    continue
                mu[i][j] = Fraction(sum(Fraction(u[i][a]) * g[a][b] * star[j][b]
                                        for a in range(n) for b in range(n)), norms[j])
                for t in range(n):
                    vi[t] -= mu[i][j] * star[j][t]
            star.append(vi)
            norms.append(sum(vi[a] * g[a][b] * vi[b] for a in range(n) for b in range(n)))
        return star, mu, norms

    delta = Fraction(99, 100)
    k = 1
    star, mu, norms = gso()
    guard = 0
    while k < n:
        guard += 1
        if guard > 10000:
            break
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                for t in range(n):
                    u[k][t] -= q * u[j][t]
                star, mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            u[k], u[k - 1] = u[k - 1], u[k]
            star, mu, norms = gso()
            k = max(k - 1, 1)
    return u


def _enumerate_upto(g: list[list[int]], bound: Fraction) -> list[tuple[int, list[int]]]:
    """All nonzero x in Z^4 (up to sign) with x g x^T <= bound; (value, x) pairs."""
    n = 4
    # rational Cholesky: q[i][i], mu[i][j] for j > i  (x_i + sum mu x_j)^2 * q_ii
    q = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            q[i][i] -= q[j][j] * q[j][i] * q[j][i]
            if q[i][i] <= 0:
                raise ValueError("form not positive definite")
        for j in range(i + 1, n):
            s = Fraction(g[i][j])
            for t in range(i):
                s -= q[t][t] * q[t][i] * q[t][j]
            q[i][j] = s / q[i][i]
    out = []
    x = [0] * n

    def isqrt_frac(f: Fraction) -> int:
        if f < 0:
            return -1
        return math.isqrt(f.numerator * f.denominator) // f.denominator

    def rec(i: int, remaining: Fraction, center_terms: list[Fraction]):
        # x_i ranges with q_ii (x_i + c_i)^2 <= remaining
        ci = center_terms[i]
        radius = isqrt_frac(remaining / q[i][i]) + 1
        lo = math.ceil(-ci - radius)
        hi = math.floor(-ci + radius)
        for xi in range(lo, hi + 1):
            val = q[i][i] * (xi + ci) ** 2
            if val > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    v = sum(x[a] * g[a][b] * x[b] for a in range(n) for b in range(n))
                    if 0 < v <= bound:
                        vec = list(x)
                        # canonical sign: first nonzero positive
                        for t in vec:
                            if t:
                                if t < 0:
                                    vec = [-y for y in vec]
                                break
                        out.append((v, vec))
            else:
                new_centers = list(center_terms)
                for t in range(i):
                    new_centers[t] += q[t][i] * xi
                rec(i - 1, remaining - val, new_centers)
        x[i] = 0

    rec(n - 1, Fraction(bound), [Fraction(0)] * n)
    # dedupe sign-canonicalized vectors
    seen = {}
    for v, vec in out:
        seen[tuple(vec)] = v
    return sorted(((v, list(k)) for k, v in seen.items()), key=lambda t: (t[0], t[1]))


def _independent_subset(vecs: list[list[int]]) -> bool:
    m = [[Fraction(x) for x in r] for r in vecs]
    rank = 0
    for col in range(4):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                for t in range(4):
                    m[i][t] -= f * m[rank][t]
        rank += 1
    return rank == len(vecs)


def minkowski_reduce(lattice: QuatLattice) -> tuple[tuple[Quaternion, ...], tuple, int]:
    """Certified successive minima of the lattice under the degree form.

    Returns (basis quaternions achieving the minima, the four minima as
    Fractions/ints, number of vectors enumerated). The first minimum is the
    true lattice minimum: every shorter vector is enumerated exhaustively.
    """
    g, scale = lattice.gram_int()
    u = _lll_gram(g)
    red_norms = [sum(u[i][a] * g[a][b] * u[i][b] for a in range(4) for b in range(4))
                 for i in range(4)]
    bound = max(red_norms)
    cand = _enumerate_upto(g, Fraction(bound))
    chosen: list[list[int]] = []
    minima: list = []
    for v, vec in cand:
        if _independent_subset(chosen + [vec]):
            chosen.append(vec)
            minima.append(v)
            if len(chosen) == 4:
                break
    if len(chosen) < 4:
        raise RuntimeError("enumeration bound too small for full rank")
    # complete to a basis if the greedy minima vectors are not unimodular
    det_l = abs(_det4(lattice.mat))
    if abs(_det4(chosen)) != 1:
        # swap in alternatives of equal norm at each level
        for idx in range(3, -1, -1):
            for v, vec in cand:
                if v != minima[idx]:
                    continue
                trial = chosen[:idx] + [vec] + chosen[idx + 1:]
                if _independent_subset(trial) and abs(_det4(trial)) == 1:
                    chosen = trial
                    break
            if abs(_det4(chosen)) == 1:
                break
    quats = []
    for vec in chosen:
        row = [sum(vec[i] * lattice.mat[i][t] for i in range(4)) for t in range(4)]
        quats.append(Quaternion(lattice.p, *row, lattice.den))
    vals = tuple(Fraction(v, scale) if Fraction(v, scale).denominator != 1
                 else Fraction(v, scale).numerator for v in minima)
    return tuple(quats), vals, len(cand)


def short_vectors(lattice: QuatLattice, bound) -> list[tuple[Fraction, Quaternion]]:
    """All lattice vectors with reduced norm <= bound, sorted by norm (one per +-pair)."""
    g, scale = lattice.gram_int()
    cand = _enumerate_upto(g, Fraction(bound) * scale)
    out = []
    for v, vec in cand:
        row = [sum(vec[i] * lattice.mat[i][t] for i in range(4)) for t in range(4)]
        out.append((Fraction(v, scale), Quaternion(lattice.p, *row, lattice.den)))
    return out


# ---------------------------------------------------------------------------
# orders and ideals
# ---------------------------------------------------------------------------

class Order:
    """An order of B_{p,oo}: unital subring that is a full-rank lattice."""

    __slots__ = ("lattice",)

    def __init__(self, lattice: QuatLattice, check: bool = True):
        self.lattice = lattice
        if check:
            self._validate()

    def _validate(self):
        one = Quaternion(self.p, 1, 0, 0, 0, 1)
        if not self.lattice.contains(one):
            raise ValueError("order must contain 1")
        bas = self.lattice.basis()
        for x in bas:
            if not x.is_integral_for():
                raise ValueError("order basis element not integral")
        for x in bas:
            for y in bas:
                if not self.lattice.contains(x * y):
                    raise ValueError("order not closed under multiplication")

    @property
    def p(self) -> int:
        return self.lattice.p

    def basis(self):
        return self.lattice.basis()

    def contains(self, q: Quaternion) -> bool:
        return self.lattice.contains(q)

    def covolume(self) -> Fraction:
        return self.lattice.covolume()

    def is_maximal(self) -> bool:
        return self.covolume() == Fraction(self.p, 4)

    def __eq__(self, other):
        return isinstance(other, Order) and self.lattice == other.lattice

    def __hash__(self):
        return hash(("Order", self.lattice))

    def __repr__(self):
        return f"Order({self.lattice!r})"

    def scaled_suborder_lattice(self, n: int) -> QuatLattice:
        """Lattice Z + n*O."""
        rows = [[x * n for x in r] for r in self.lattice.mat]
        rows.append([self.lattice.den, 0, 0, 0])
        return QuatLattice(self.p, rows, self.lattice.den)


def special_order(params: AlgebraParams) -> Order:
    """The maximal order with basis (1, i, (i+j)/2, (1+k)/2)."""
    p = params.p
    mat = [
        [2, 0, 0, 0],
        [0, 2, 0, 0],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
    ]
    return Order(QuatLattice(p, mat, 2))


def left_order(lattice: QuatLattice) -> Order:
    """{q : q * L <= L}, exact."""
    cur: Optional[QuatLattice] = None
    for b in lattice.basis():
        li = lattice.mul_right(b.inverse())
        cur = li if cur is None else cur.intersect(li)
    return Order(cur)


def right_order(lattice: QuatLattice) -> Order:
    """{q : L * q <= L}, exact."""
    cur: Optional[QuatLattice] = None
    for b in lattice.basis():
        li = lattice.mul_left(b.inverse())
        cur = li if cur is None else cur.intersect(li)
    return Order(cur)


class Ideal:
    """Integral left ideal of a maximal order, with cached invariants."""

    __slots__ = ("lattice", "_left_order", "_norm", "_norm_factors")

    def __init__(self, lattice: QuatLattice, left_order_hint: Optional[Order] = None,
                 norm_factors: Optional[FactoredInt] = None):
        self.lattice = lattice
        self._left_order = left_order_hint
        self._norm: Optional[int] = None
        self._norm_factors = norm_factors

    @property
    def p(self) -> int:
        return self.lattice.p

    def basis(self):
        return self.lattice.basis()

    def left_order(self) -> Order:
        if self._left_order is None:
            self._left_order = left_order(self.lattice)
        return self._left_order

    def right_order(self) -> Order:
        return right_order(self.lattice)

    def conjugate(self) -> "Ideal":
        return Ideal(self.lattice.conjugate())

    def norm(self) -> int:
        """Both norm formulas (gcd of degrees, sqrt of index), asserted equal."""
        if self._norm is None:
            g = self.lattice.norm_form_gcd()
            idx = self.lattice.index_in(self.left_order().lattice)
            s = math.isqrt(idx)
            if s * s != idx:
                raise ValueError("ideal index is not a perfect square")
            if s != g:
                raise ValueError(f"norm mismatch: gcd {g} vs index sqrt {s} "
                                 "(corrupted ideal)")
            self._norm = g
        return self._norm

    def contains(self, q: Quaternion) -> bool:
        return self.lattice.contains(q)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.lattice == other.lattice

    def __hash__(self):
        return hash(("Ideal", self.lattice))

    def __repr__(self):
        return f"Ideal(norm={self._norm}, {self.lattice!r})"

    def to_json_dict(self) -> dict:
        d = self.lattice.to_json_dict()
        if self._norm_factors is not None:
            d["norm_factors"] = list(self._norm_factors.factors)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "Ideal":
        nf = None
        if "norm_factors" in d:
            nf = FactoredInt.from_factors([tuple(t) for t in d["norm_factors"]])
        return cls(QuatLattice.from_json_dict(d), norm_factors=nf)


def principal_ideal(order: Order, alpha: Quaternion) -> Ideal:
    """O * alpha."""
    lat = order.lattice.mul_right(alpha)
    return Ideal(lat, left_order_hint=order)


def ideal_from_generator(order: Order, alpha: Quaternion, n: int) -> Ideal:
    """O*alpha + O*n."""
    lat = order.lattice.mul_right(alpha).add(order.lattice.scale(n))
    return Ideal(lat, left_order_hint=order)


def ideal_mul(i1: Ideal, i2: Ideal, check_compat: bool = True) -> Ideal:
    """Product ideal; requires right order of i1 = left order of i2."""
    if check_compat:
        if right_order(i1.lattice).lattice != i2.left_order().lattice:
            raise ValueError("incompatible ideals (right order != left order)")
    lat = i1.lattice.mul_lattice(i2.lattice)
    return Ideal(lat, left_order_hint=i1._left_order)


def ideal_intersect(i1: Ideal, i2: Ideal) -> Ideal:
    return Ideal(i1.lattice.intersect(i2.lattice))


def conjugate_ideal(ideal: Ideal) -> Ideal:
    return ideal.conjugate()


def chi(ideal: Ideal, alpha: Quaternion, check: bool = True) -> Ideal:
    """chi_I(alpha) = I * conj(alpha) / n(I): the equivalent ideal fixed by alpha."""
    if check:
        if alpha.is_zero():
            raise ValueError("alpha must be nonzero")
        if not ideal.contains(alpha):
            raise ValueError("alpha not in the ideal")
    n = ideal.norm()
    lat = ideal.lattice.mul_right(alpha.conjugate()).scale(Fraction(1, n))
    return Ideal(lat, left_order_hint=ideal._left_order)


def connecting_ideal(o1: Order, o2: Order) -> Ideal:
    """Integral primitive ideal with left order o1 and right order o2."""
    prod = o1.lattice.mul_lattice(o2.lattice)
    lat = prod.scale(prod.den)
    # make primitive: divide by the content of its coordinates in o1
    t = []
    for b in lat.basis():
        co = o1.lattice.coordinates_of(b)
        if co is None or any(x.denominator != 1 for x in co):
            raise ValueError("connecting ideal not integral over o1")
        t += [int(x) for x in co]
    g = 0
    for x in t:
        g = math.gcd(g, x)
    if g > 1:
        lat = lat.scale(Fraction(1, g))
    return Ideal(lat, left_order_hint=o1)


def pullback(i1: Ideal, i2: Ideal) -> Ideal:
    """[I]^* J = I*J + n(J) O_L(I) for compatible I, J."""
    nj = i2.norm()
    ol = i1.left_order()
    lat = i1.lattice.mul_lattice(i2.lattice).add(ol.lattice.scale(nj))
    return Ideal(lat, left_order_hint=ol)


def pushforward(i1: Ideal, i2: Ideal) -> Ideal:
    """[I]_* J = (1/n(I)) conj(I) (I cap J) for I, J left ideals of one order."""
    ni = i1.norm()
    inter = i1.lattice.intersect(i2.lattice)
    lat = i1.lattice.conjugate().mul_lattice(inter).scale(Fraction(1, ni))
    return Ideal(lat)


def equivalence_witness(i1: Ideal, i2: Ideal) -> Optional[Quaternion]:
    """alpha in I1 with chi_{I1}(alpha) = I2, or None if inequivalent.

    Both must be left ideals of the same maximal order.
    """
    k = i1.lattice.conjugate().mul_lattice(i2.lattice)
    target = Fraction(i1.norm()) * i2.norm()
    _, minima, _ = minkowski_reduce(k)
    if minima[0] != target:
        return None
    for val, vec in short_vectors(k, target):
        if val == target:
            alpha = vec.conjugate()
            if i1.contains(alpha):
                return alpha
    return None


def is_equivalent(i1: Ideal, i2: Ideal) -> bool:
    return equivalence_witness(i1, i2) is not None


# ---------------------------------------------------------------------------
# random ideals
# ---------------------------------------------------------------------------

def _isotropic_vector_mod(order: Order, q: int, rng: random.Random) -> Optional[Quaternion]:
    """alpha in O, alpha not in qO, with n(alpha) = 0 mod q (odd prime q coprime to 2p)."""
    bas = order.basis()
    for _ in range(200):
        x3, x4 = rng.randrange(q), rng.randrange(q)
        tail = x3 * bas[2] + x4 * bas[3]
        # solve n(x1 b0 + x2 b1 + tail) = 0 mod q as quadratic in x1 for random x2
        for _ in range(20):
            x2 = rng.randrange(q)
            u = tail + x2 * bas[1]
            # n(x1 b0 + u) = x1^2 n(b0) + x1 B(b0,u) + n(u); coefficients are integers
            a2 = int(bas[0].reduced_norm()) % q
            a1 = int(polar_pairing(bas[0], u)) % q
            a0 = int(u.reduced_norm()) % q
            if a2 % q == 0:
                if a1 % q != 0:
                    x1 = (-a0) * pow(a1, -1, q) % q
                else:
                    continue
            else:
                disc = (a1 * a1 - 4 * a2 * a0) % q
                r = sqrt_mod(disc, q)
                if r is None:
                    continue
                x1 = (-a1 + r) * pow(2 * a2, -1, q) % q
            alpha = x1 * bas[0] + x2 * bas[1] + tail
            if alpha.is_zero():
                continue
            if int(alpha.reduced_norm()) % q == 0 and \
                    not all(v % q == 0 for v in (x1, x2, x3, x4)):
                return alpha
    return None


def random_left_ideal(order: Order, q: int, rng: random.Random) -> Ideal:
    """Random integral left O-ideal of prime norm q (q odd, coprime to p)."""
    if not is_prime(q):
        raise ValueError("q must be prime")
    for _ in range(200):
        alpha = _isotropic_vector_mod(order, q, rng)
        if alpha is None:
            continue
        ide = ideal_from_generator(order, alpha, q)
        if ide.lattice.index_in(order.lattice) == q * q:
            ide._norm = q
            return ide
    raise RuntimeError(f"failed to sample a norm-{q} ideal")


def random_right_ideal(order: Order, q: int, rng: random.Random) -> Ideal:
    """Random integral right O-ideal of prime norm q (returned as plain Ideal
    whose lattice is a right ideal; its left order is the other maximal order)."""
    left = random_left_ideal(order, q, rng)
    return Ideal(left.lattice.conjugate())
