"""Exact linear algebra over Z/n (Howell normal form) and over Q.

Row-vector convention throughout: a matrix acts on the right, ``x -> x . m``,
and the "row module" of a matrix is the Z/n-span of its rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

Row = tuple[int, ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) over the integers."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def unit_normalizer(a: int, n: int) -> int:
    """A unit w of Z/n with w*a = gcd(a, n) (mod n)."""
    return _unit_normalizer(a % n, n)


@lru_cache(maxsize=65536)
def _unit_normalizer(a: int, n: int) -> int:
    if a == 0:
        return 1
    d = gcd(a, n)
    m = n // d
    w0 = pow(a // d, -1, m) if m > 1 else 0
    for k in range(d + 1):
        w = (w0 + k * m) % n
        if gcd(w, n) == 1:
            return w
    raise ArithmeticError(f"no unit normalizer for {a} mod {n}")  # pragma: no cover


def _pivot(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return len(row)


def _howell_rows(rows: Iterable[Sequence[int]], n: int, ncols: int) -> tuple[Row, ...]:
    A = [[x % n for x in r] for r in rows]
    for r in A:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a {ncols}-column matrix")
    A = [r for r in A if any(r)]
    r = 0
    for col in range(ncols):
        if r >= len(A):
            break
        for i in range(r, len(A)):
            if A[i][col]:
                A[r], A[i] = A[i], A[r]
                break
        else:
            continue
        for i in range(r + 1, len(A)):
            b = A[i][col]
            if not b:
                continue
            a = A[r][col]
            g, s, t = _xgcd(a, b)
            u, v = -b // g, a // g
            top, bot = A[r], A[i]
            A[r] = [(s * x + t * y) % n for x, y in zip(top, bot)]
            A[i] = [(u * x + v * y) % n for x, y in zip(top, bot)]
        w = _unit_normalizer(A[r][col], n)
        if w != 1:
            A[r] = [(w * x) % n for x in A[r]]
        d = A[r][col]
        for i in range(r):
            q = A[i][col] // d
            if q:
                A[i] = [(x - q * y) % n for x, y in zip(A[i], A[r])]
        # annihilator multiple of the pivot row: zero at col, absorbed later
        extra = [((n // d) * x) % n for x in A[r]]
        if any(extra):
            A.append(extra)
        r += 1
    return tuple(tuple(x) for x in A[:r])


@dataclass(frozen=True)
class HowellBasis:
    """Canonical generating rows of a submodule of (Z/n)^ncols.

    Two bases are equal exactly when they span the same row module.
    """

    modulus: int
    ncols: int
    rows: tuple[Row, ...]
    pivots: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pivots", tuple(_pivot(r) for r in self.rows))

    def reduce(self, v: Sequence[int]) -> Row:
        """Canonical coset representative of ``v`` modulo the span."""
        n = self.modulus
        w = [x % n for x in v]
        for row, p in zip(self.rows, self.pivots):
            q = w[p] // row[p]
            if q:
                for j in range(p, len(w)):
                    w[j] = (w[j] - q * row[j]) % n
        return tuple(w)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def contains_all(self, other: "HowellBasis | Iterable[Sequence[int]]") -> bool:
        rows = other.rows if isinstance(other, HowellBasis) else other
        return all(self.contains(r) for r in rows)

    def cardinality(self) -> int:
        size = 1
        for row, p in zip(self.rows, self.pivots):
            size *= self.modulus // row[p]
        return size

    def elements(self) -> Iterator[Row]:
        n = self.modulus
        orders = [n // row[_pivot(row)] for row in self.rows]
        for coeffs in product(*(range(o) for o in orders)):
            v = [0] * self.ncols
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = [(x + c * y) % n for x, y in zip(v, row)]
            yield tuple(v)

    def is_zero(self) -> bool:
        return not self.rows

    def __add__(self, other: "HowellBasis") -> "HowellBasis":
        _check_compatible(self, other)
        return howell_form(self.rows + other.rows, self.modulus, self.ncols)

    def __and__(self, other: "HowellBasis") -> "HowellBasis":
        return intersection(self, other)

    def __le__(self, other: "HowellBasis") -> bool:
        _check_compatible(self, other)
        return other.contains_all(self)


def _check_compatible(a: HowellBasis, b: HowellBasis) -> None:
    if a.modulus != b.modulus or a.ncols != b.ncols:
        raise ValueError("bases live in different ambient modules")


def howell_form(rows: Iterable[Sequence[int]], n: int, ncols: int) -> HowellBasis:
    """Howell normal form of the row module spanned by ``rows`` over Z/n."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    return HowellBasis(n, ncols, _howell_rows(rows, n, ncols))


def zero_basis(n: int, ncols: int) -> HowellBasis:
    return HowellBasis(n, ncols, ())


def full_basis(n: int, ncols: int) -> HowellBasis:
    return howell_form(identity(ncols), n, ncols)


def identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) % n for j in range(cols)]
        for row in a
    ]


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], n: int, ncols: Optional[int] = None) -> Row:
    cols = len(m[0]) if m else (ncols or 0)
    out = [0] * cols
    for x, row in zip(v, m):
        if x:
            out = [a + x * b for a, b in zip(out, row)]
    return tuple(a % n for a in out)


def preimage(m: Sequence[Sequence[int]], target: HowellBasis, nrows: Optional[int] = None) -> HowellBasis:
    """Basis of {x : x . m lies in span(target)} inside (Z/n)^nrows."""
    n, c = target.modulus, target.ncols
    r = len(m) if nrows is None else nrows
    aug = [list(row) + [int(i == j) for j in range(r)] for i, row in enumerate(m)]
    aug += [list(t) + [0] * r for t in target.rows]
    H = _howell_rows(aug, n, c + r)
    return howell_form((row[c:] for row in H if _pivot(row) >= c), n, r)


def kernel(m: Sequence[Sequence[int]], n: int, ncols: Optional[int] = None) -> HowellBasis:
    """Basis of the left kernel {x : x . m = 0} over Z/n."""
    c = len(m[0]) if m else (ncols or 0)
    return preimage(m, zero_basis(n, c), nrows=len(m))


def intersection(a: HowellBasis, b: HowellBasis) -> HowellBasis:
    _check_compatible(a, b)
    n, c = a.modulus, a.ncols
    aug = [list(r) + list(r) for r in a.rows] + [list(r) + [0] * c for r in b.rows]
    H = _howell_rows(aug, n, 2 * c)
    return howell_form((row[c:] for row in H if _pivot(row) >= c), n, c)


def image(m: Sequence[Sequence[int]], source: HowellBasis, n: int, ncols: int) -> HowellBasis:
    """Span of {x . m : x in source}."""
    return howell_form((vecmat(r, m, n, ncols) for r in source.rows), n, ncols)


def solve(m: Sequence[Sequence[int]], b: Sequence[int], n: int) -> Optional[Row]:
    """Some x with x . m = b over Z/n, or None when b is outside the row span.

    The representative is canonical: it is reduced modulo the left kernel.
    """
    return Solver(m, n, len(b))(b)


class Solver:
    """Reusable ``solve`` for a fixed matrix (one Howell reduction, many right-hand sides)."""

    def __init__(self, m: Sequence[Sequence[int]], n: int, ncols: Optional[int] = None):
        r = len(m)
        c = len(m[0]) if m else (ncols or 0)
        aug = [list(row) + [int(i == j) for j in range(r)] for i, row in enumerate(m)]
        self.n, self.r, self.c = n, r, c
        self.rows = _howell_rows(aug, n, c + r)
        self.pivots = [_pivot(row) for row in self.rows]

    def __call__(self, b: Sequence[int]) -> Optional[Row]:
        n, c = self.n, self.c
        v = [x % n for x in b] + [0] * self.r
        for row, p in zip(self.rows, self.pivots):
            q = v[p] // row[p]
            if q:
                v = [(x - q * y) % n for x, y in zip(v, row)]
        if any(v[:c]):
            return None
        return tuple((-x) % n for x in v[c:])


def abelian_invariants(relations: Sequence[Sequence[int]], n: int, ncols: int) -> tuple[int, ...]:
    """Invariant factors (>1) of (Z/n)^ncols / span(relations), via a Smith diagonal."""
    rows = [list(r) for r in relations] + [[n * int(i == j) for j in range(ncols)] for i in range(ncols)]
    diag = smith_diagonal(rows, ncols)
    return tuple(sorted(d for d in diag if d != 1))


def smith_diagonal(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonnegative Smith invariants d1 | d2 | ... of an integer matrix (rank many, 0 for free)."""
    A = [list(r) for r in rows]
    m = len(A)
    diag: list[int] = []
    t = 0
    while t < min(m, ncols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, ncols) if A[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                A[t] = [x + y for x, y in zip(A[t], A[i])]
                continue
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, ncols)
                  if A[i][j] and (i == t or j == t)]
            _, pi, pj = min(nz)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


# ---------------------------------------------------------------------------
# rational backend

def to_fractions(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, zero rows dropped."""
    A = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        lead = A[r][col]
        A[r] = [x / lead for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    return A[:r], pivots


def rational_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def rational_left_kernel(m: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """RREF basis of {x : x . m = 0} over Q."""
    r = len(m)
    c = len(m[0]) if m else (ncols or 0)
    transposed = [[Fraction(m[i][j]) for i in range(r)] for j in range(c)]
    R, pivots = rref(transposed, r)
    free = [j for j in range(r) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * r
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return rref(basis, r)[0] if basis else []


def rational_preimage(m: Sequence[Sequence[Fraction]], target: Sequence[Sequence[Fraction]],
                      nrows: int, ncols: int) -> list[list[Fraction]]:
    """RREF basis of {x : x . m lies in the row span of target} over Q."""
    stacked = [list(row) for row in m] + [list(t) for t in target]
    K = rational_left_kernel(stacked, ncols) if stacked else []
    return rref([k[:nrows] for k in K], nrows)[0]


def subspace_equal(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], ncols: int) -> bool:
    return rref(a, ncols)[0] == rref(b, ncols)[0]


def subspace_contains(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction], ncols: int) -> bool:
    return rational_rank(list(a) + [list(v)], ncols) == rational_rank(a, ncols)
