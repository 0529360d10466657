"""Contraction action of k[x_1..x_n] on truncated divided-power style polynomial spaces over Q.

x^a o X^b = b!/(b-a)! X^(b-a) when b >= a componentwise, else 0.  The space
of polynomials of degree <= D in X is closed under contraction, so every
result below is exact "at truncation D".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Any, Iterable, Optional, Sequence

from .linalg import rational_left_kernel, rational_preimage, rref, subspace_contains, subspace_equal
from .report import Report

Exponent = tuple[int, ...]
Poly = dict[Exponent, Fraction]


def _monomials(nvars: int, D: int) -> list[Exponent]:
    out = [e for e in product(range(D + 1), repeat=nvars) if sum(e) <= D]
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


def contract(alpha: Sequence[int], beta: Sequence[int]) -> Poly:
    """x^alpha o X^beta as a sparse polynomial (empty when zero)."""
    if len(alpha) != len(beta):
        raise ValueError("exponent vectors of different lengths")
    if any(a < 0 for a in alpha) or any(b < 0 for b in beta):
        raise ValueError("negative exponent")
    if any(b < a for a, b in zip(alpha, beta)):
        return {}
    c = 1
    for a, b in zip(alpha, beta):
        c *= factorial(b) // factorial(b - a)
    return {tuple(b - a for a, b in zip(alpha, beta)): Fraction(c)}


def parse_poly(data: Any, nvars: int) -> Poly:
    """Sparse input: a list of [exponents, coefficient] pairs, or a bare exponent list for a monomial."""
    if isinstance(data, dict):
        items = [(tuple(map(int, k.split(","))) if isinstance(k, str) else tuple(k), v) for k, v in data.items()]
    elif data and all(isinstance(x, int) for x in data):
        items = [(tuple(data), 1)]
    else:
        items = [(tuple(e), c) for e, c in data]
    out: Poly = {}
    for e, c in items:
        if len(e) != nvars:
            raise ValueError(f"monomial {list(e)} has {len(e)} exponents, expected {nvars}")
        if any(x < 0 for x in e):
            raise ValueError(f"negative exponent in {list(e)}")
        out[e] = out.get(e, Fraction(0)) + Fraction(c)
    return {e: c for e, c in out.items() if c != 0}


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for a, c in f.items():
        for b, d in g.items():
            e = tuple(x + y for x, y in zip(a, b))
            out[e] = out.get(e, Fraction(0)) + c * d
    return {e: c for e, c in out.items() if c != 0}


def degree(f: Poly) -> int:
    return max((sum(e) for e in f), default=-1)


def _leading(f: Poly) -> Exponent:
    return max(f, key=lambda e: (sum(e), e))


@dataclass(frozen=True)
class PolyIdeal:
    """Ideal of Q[x_1..x_n] given by generators, each scaled to leading coefficient 1."""

    nvars: int
    generators: tuple[tuple[tuple[Exponent, Fraction], ...], ...]

    @classmethod
    def from_polys(cls, nvars: int, polys: Iterable[Poly]) -> "PolyIdeal":
        gens = []
        for f in polys:
            if not f:
                raise ValueError("zero generator")
            lc = f[_leading(f)]
            gens.append(tuple(sorted((e, c / lc) for e, c in f.items())))
        return cls(nvars, tuple(sorted(set(gens))))

    @classmethod
    def monomial(cls, *exponents: Sequence[int]) -> "PolyIdeal":
        n = len(exponents[0])
        return cls.from_polys(n, [{tuple(e): Fraction(1)} for e in exponents])

    def polys(self) -> list[Poly]:
        return [dict(g) for g in self.generators]

    def power(self, k: int) -> "PolyIdeal":
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return PolyIdeal.from_polys(self.nvars, [{(0,) * self.nvars: Fraction(1)}])
        out = self.polys()
        for _ in range(k - 1):
            out = [poly_mul(f, g) for f in out for g in self.polys()]
        return PolyIdeal.from_polys(self.nvars, [f for f in out if f])

    def min_degree(self) -> int:
        return min(degree(dict(g)) for g in self.generators)

    def __str__(self) -> str:
        return "<" + ", ".join(_fmt(dict(g), "x") for g in self.generators) + ">"


def _fmt(f: Poly, var: str) -> str:
    if not f:
        return "0"
    terms = []
    for e in sorted(f, key=lambda e: (sum(e), e)):
        c = f[e]
        mono = "*".join(
            (f"{var}{i + 1}" if len(e) > 1 else var) + (f"^{k}" if k > 1 else "")
            for i, k in enumerate(e) if k
        )
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)


class InverseSystem:
    """Polynomials of degree <= D in X_1..X_n with exact rational coordinates."""

    def __init__(self, nvars: int, D: int):
        if nvars < 1 or D < 0:
            raise ValueError("need nvars >= 1 and D >= 0")
        self.nvars, self.D = nvars, D
        self.monomials = _monomials(nvars, D)
        self.index = {e: i for i, e in enumerate(self.monomials)}
        if len(self.monomials) != comb(nvars + D, nvars):  # pragma: no cover
            raise AssertionError("monomial count mismatch")

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def vector(self, f: Poly) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        for e, c in f.items():
            if sum(e) > self.D:
                raise ValueError(f"monomial {e} exceeds the truncation degree {self.D}")
            v[self.index[e]] += c
        return v

    def poly(self, v: Sequence[Fraction]) -> Poly:
        return {self.monomials[i]: Fraction(c) for i, c in enumerate(v) if c != 0}

    def format(self, v: Sequence[Fraction]) -> str:
        return _fmt(self.poly(v), "X")

    def act(self, g: Poly, f: Poly) -> Poly:
        out: Poly = {}
        for a, c in g.items():
            for b, d in f.items():
                for e, k in contract(a, b).items():
                    out[e] = out.get(e, Fraction(0)) + c * d * k
        return {e: c for e, c in out.items() if c != 0}

    def operator(self, g: Poly) -> list[list[Fraction]]:
        """Row i = coordinates of g o X^(monomial i)."""
        return [self.vector(self.act(g, {b: Fraction(1)})) for b in self.monomials]

    def _stacked(self, J: PolyIdeal) -> list[list[Fraction]]:
        ops = [self.operator(g) for g in J.polys()]
        return [[x for op in ops for x in op[i]] for i in range(self.dim)]

    def annihilator(self, J: PolyIdeal) -> list[list[Fraction]]:
        """RREF basis of (0 :_M J)."""
        if J.nvars != self.nvars:
            raise ValueError("ideal and inverse system have different numbers of variables")
        return rational_left_kernel(self._stacked(J), len(J.generators) * self.dim)

    def colon(self, J: PolyIdeal, N: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
        """{f : g o f lies in span(N) for every generator g}."""
        t, d = len(J.generators), self.dim
        target = []
        for b in range(t):
            for row in N:
                v = [Fraction(0)] * (t * d)
                v[b * d:(b + 1) * d] = row
                target.append(v)
        return rational_preimage(self._stacked(J), target, d, t * d)


def annihilator_in_system(D: int, nvars: int, J: PolyIdeal) -> list[list[Fraction]]:
    return InverseSystem(nvars, D).annihilator(J)


@dataclass
class AnnihilatorProfile:
    """dim (0:J^k) for k = 1..kmax at truncation D."""

    D: int
    nvars: int
    ideal: str
    dims: tuple[int, ...]
    bases: tuple[tuple[str, ...], ...]
    reduced: bool
    witness: Optional[str]
    exceeds_truncation: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict[str, Any]:
        return {
            "truncation": self.D, "nvars": self.nvars, "ideal": self.ideal, "dims": list(self.dims),
            "bases": [list(b) for b in self.bases], "reduced": self.reduced, "witness": self.witness,
            "exceeds_truncation": list(self.exceeds_truncation),
        }


def reducedness_profile(D: int, nvars: int, J: PolyIdeal, kmax: int) -> AnnihilatorProfile:
    """Annihilator dimensions of J, J^2, ..., J^kmax and a witness of non-reducedness.

    Powers whose generators all have degree above D annihilate the whole
    truncated space; those k are listed in ``exceeds_truncation``.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    S = InverseSystem(nvars, D)
    dims, bases, over = [], [], []
    spaces = []
    for k in range(1, kmax + 1):
        P = J.power(k)
        if P.min_degree() > D:
            over.append(k)
        A = S.annihilator(P)
        spaces.append(A)
        dims.append(len(A))
        bases.append(tuple(S.format(v) for v in A))
    witness = None
    reduced = True
    if kmax >= 2:
        reduced = dims[0] == dims[1]
        for v in spaces[1]:
            if not subspace_contains(spaces[0], v, S.dim):
                witness = S.format(v)
                break
    return AnnihilatorProfile(D, nvars, str(J), tuple(dims), tuple(bases), reduced, witness, tuple(over))


def check_apolarity_layers(D: int, nvars: int, J: PolyIdeal, k: int = 1) -> Report:
    """m -> m + (0:J^k) identifies (0:J^(k+1)) / (0:J^k) with (0 : J) in M/(0:J^k)."""
    S = InverseSystem(nvars, D)
    low = S.annihilator(J.power(k))
    high = S.annihilator(J.power(k + 1))
    quot = S.colon(J, low)  # preimage in M of (0 :_{M/(0:J^k)} J)
    rep = Report("apolarity_layers", f"(0 : J) in M/(0:J^{k}) equals (0:J^{k + 1})/(0:J^{k}) at truncation {D}")
    dq, dh, dl = len(quot) - len(low), len(high), len(low)
    rep.details.update(truncation=D, quotient_annihilator_dim=dq, high_dim=dh, low_dim=dl)
    if not subspace_equal(quot, high, S.dim):
        rep.fail("preimage of the quotient annihilator differs from (0:J^(k+1))",
                 preimage=[S.format(v) for v in quot], expected=[S.format(v) for v in high])
    if dq != dh - dl:
        rep.fail("dimension identity fails", quotient=dq, difference=dh - dl)
    return rep.validate()


def differentiate(f: Poly, alpha: Sequence[int]) -> Poly:
    """Iterated formal partial derivative d^alpha f (the characteristic-zero oracle)."""
    out = dict(f)
    for i, a in enumerate(alpha):
        for _ in range(a):
            nxt: Poly = {}
            for e, c in out.items():
                if e[i]:
                    e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                    nxt[e2] = nxt.get(e2, Fraction(0)) + c * e[i]
            out = nxt
    return {e: c for e, c in out.items() if c != 0}


def basis_polys(S: InverseSystem, rows: Sequence[Sequence[Fraction]]) -> list[Poly]:
    return [S.poly(r) for r in rref(rows, S.dim)[0]]
