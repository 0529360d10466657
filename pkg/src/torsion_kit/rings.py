"""Finite commutative unital rings presented as Z/n-algebras, and their ideals."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import lcm
from typing import Any, Iterable, Iterator, Optional, Sequence

from .linalg import HowellBasis, Row, howell_form


class RingError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A commutative unital ring with additive group (Z/n)^rank / diag(orders).

    ``table[i][j]`` holds the coordinates of e_i * e_j.  Coordinates of
    basis element i are read modulo ``orders[i]``, which divides ``n``.
    """

    n: int
    orders: tuple[int, ...]
    table: tuple[tuple[Row, ...], ...]
    unit: Row
    description: Any = None

    def __post_init__(self):
        if self.n < 2:
            raise RingError("characteristic modulus must be at least 2")
        b = self.rank
        if len(self.table) != b or any(len(row) != b for row in self.table):
            raise RingError("structure constant table has the wrong shape")
        for o in self.orders:
            if o < 1 or self.n % o:
                raise RingError(f"additive order {o} does not divide {self.n}")
        object.__setattr__(self, "table", tuple(
            tuple(self.normalize(c) for c in row) for row in self.table))
        object.__setattr__(self, "unit", self.normalize(self.unit))
        self._validate()

    @property
    def rank(self) -> int:
        return len(self.orders)

    def normalize(self, coords: Sequence[int]) -> Row:
        if len(coords) != self.rank:
            raise RingError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(x % o for x, o in zip(coords, self.orders))

    def _validate(self) -> None:
        b = self.rank
        basis = [self.basis_element(i) for i in range(b)]
        for i in range(b):
            # the relation o_i * e_i = 0 must be compatible with multiplication
            for j in range(b):
                scaled = tuple(self.orders[i] * x for x in self.table[i][j])
                if any(self.normalize(scaled)):
                    raise RingError(f"e{i}*e{j} is not killed by the order of e{i}")
                if self.table[i][j] != self.table[j][i]:
                    raise RingError(f"multiplication is not commutative on e{i}, e{j}")
            if self.mul(self.unit, basis[i]) != basis[i]:
                raise RingError(f"unit does not act as identity on e{i}")
        for i, j, k in product(range(b), repeat=3):
            if self.mul(self.mul(basis[i], basis[j]), basis[k]) != \
                    self.mul(basis[i], self.mul(basis[j], basis[k])):
                raise RingError(f"multiplication is not associative on e{i}, e{j}, e{k}")
        if not any(self.unit):
            raise RingError("the zero ring is not supported")

    # -- arithmetic ----------------------------------------------------------
    def basis_element(self, i: int) -> Row:
        return self.normalize([int(i == j) for j in range(self.rank)])

    def zero(self) -> Row:
        return (0,) * self.rank

    def add(self, x: Sequence[int], y: Sequence[int]) -> Row:
        return self.normalize([a + b for a, b in zip(x, y)])

    def neg(self, x: Sequence[int]) -> Row:
        return self.normalize([-a for a in x])

    def scale(self, k: int, x: Sequence[int]) -> Row:
        return self.normalize([k * a for a in x])

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Row:
        out = [0] * self.rank
        for i, a in enumerate(x):
            if not a:
                continue
            for j, c in enumerate(y):
                if c:
                    for k, t in enumerate(self.table[i][j]):
                        out[k] += a * c * t
        return self.normalize(out)

    def power(self, x: Sequence[int], k: int) -> Row:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def element(self, value: Any) -> Row:
        """Coerce an int (multiple of 1) or a coordinate list into an element."""
        if isinstance(value, int):
            return self.scale(value, self.unit)
        return self.normalize(list(value))

    def mult_matrix(self, x: Sequence[int]) -> list[list[int]]:
        """Matrix of y -> y*x on ring coordinates."""
        return [list(self.mul(self.basis_element(i), x)) for i in range(self.rank)]

    def elements(self) -> Iterator[Row]:
        return product(*(range(o) for o in self.orders))

    @cached_property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.orders, 1)

    @cached_property
    def relation_rows(self) -> tuple[Row, ...]:
        return tuple(
            tuple(o if j == i else 0 for j in range(self.rank))
            for i, o in enumerate(self.orders) if o != self.n
        )

    def is_idempotent_element(self, x: Sequence[int]) -> bool:
        return self.mul(x, x) == tuple(x)

    def __repr__(self) -> str:
        return f"FiniteRing({describe(self.description)})"

    # -- ideals --------------------------------------------------------------
    def ideal(self, *gens: Any) -> "Ideal":
        return ideal_generate(self, [self.element(g) for g in gens])

    def unit_ideal(self) -> "Ideal":
        return ideal_generate(self, [self.unit])

    def zero_ideal(self) -> "Ideal":
        return ideal_generate(self, [])

    @cached_property
    def ideals(self) -> tuple["Ideal", ...]:
        """All ideals, smallest first (by cardinality, then basis)."""
        seen = {self.zero_ideal().basis: self.zero_ideal()}
        principal = {}
        for x in self.elements():
            J = ideal_generate(self, [x])
            principal.setdefault(J.basis, J)
        frontier = list(seen.values())
        while frontier:
            nxt = []
            for J in frontier:
                for P in principal.values():
                    K = J + P
                    if K.basis not in seen:
                        seen[K.basis] = K
                        nxt.append(K)
            frontier = nxt
        return tuple(sorted(seen.values(), key=lambda J: (J.cardinality(), J.basis.rows)))

    def is_principal_ideal_ring(self) -> bool:
        principal = {ideal_generate(self, [x]).basis for x in self.elements()}
        return all(J.basis in principal for J in self.ideals)

    def is_product_of_fields(self) -> bool:
        """True iff every element is a unit multiple of an idempotent (von Neumann regular)."""
        return all(self.von_neumann_inverse(x) is not None for x in self.elements())

    def von_neumann_inverse(self, x: Sequence[int]) -> Optional[Row]:
        for y in self.elements():
            if self.mul(self.mul(x, y), x) == tuple(x):
                return y
        return None


def describe(desc: Any) -> str:
    if desc is None:
        return "custom"
    t = desc.get("type")
    if t in ("Zn",):
        return f"Z/{desc['n']}"
    if t == "GF":
        return f"F{desc['p'] ** desc.get('k', 1)}"
    if t == "poly":
        base = f"F{desc['n']}" if _is_prime(desc["n"]) else f"(Z/{desc['n']})"
        return f"{base}[x]/({format_poly(desc['coeffs'])})"
    if t == "product":
        return " x ".join(describe(f) for f in desc["factors"])
    if t == "table":
        return desc.get("name", f"Z/{desc['n']}-algebra of rank {len(desc['orders'])}")
    return str(t)


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    """Coefficients low degree first, printed high degree first."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
    return " + ".join(terms) or "0"


def _irreducible(p: int, k: int) -> list[int]:
    """Least monic irreducible polynomial of degree k over F_p (coefficients low first)."""
    for tail in product(range(p), repeat=k):
        f = list(reversed(tail)) + [1]
        if f[0] == 0 and k > 1:
            continue
        if all(_poly_mod(f, g, p) for d in range(1, k // 2 + 1) for g in _monics(p, d)):
            return f
    raise RingError(f"no irreducible polynomial of degree {k} over F{p}")  # pragma: no cover


def _monics(p: int, d: int):
    for tail in product(range(p), repeat=d):
        yield list(reversed(tail)) + [1]


def _poly_mod(f: list[int], g: list[int], p: int) -> bool:
    """True when g does not divide f over F_p."""
    r = f[:]
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] % p
        if c:
            for i in range(dg + 1):
                r[k - dg + i] -= c * g[i]
    return any(x % p for x in r[:dg])


def make_ring(spec: Any) -> FiniteRing:
    """Build a validated ring from a description.

    Accepted forms (dicts, as in run-spec files)::

        {"type": "Zn", "n": 8}
        {"type": "GF", "p": 2}
        {"type": "GF", "p": 2, "k": 2}                     # F4, via the least irreducible
        {"type": "poly", "n": 2, "coeffs": [0, 0, 1]}      # monic f, low degree first
        {"type": "product", "factors": [spec, spec, ...]}
        {"type": "table", "n": 4, "orders": [4, 2], "unit": [1, 0],
         "table": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]}       # Z/4[x]/(2x, x^2)

    A list is read as a product and a string goes through ``parse_ring_text``.
    """
    if isinstance(spec, FiniteRing):
        return spec
    if isinstance(spec, str):
        return make_ring(parse_ring_text(spec))
    if isinstance(spec, list):
        return make_ring({"type": "product", "factors": spec})
    if not isinstance(spec, dict):
        raise RingError(f"cannot read a ring from {spec!r}")
    t = spec.get("type")
    if t == "Zn":
        n = int(spec["n"])
        if n < 2:
            raise RingError("Z/n needs n >= 2")
        return FiniteRing(n, (n,), (((1,),),), (1,), dict(type="Zn", n=n))
    if t == "GF":
        p, k = int(spec["p"]), int(spec.get("k", 1))
        if not _is_prime(p):
            raise RingError(f"F_p needs a prime, got {p}")
        if k < 1:
            raise RingError("field degree must be positive")
        if k == 1:
            return FiniteRing(p, (p,), (((1,),),), (1,), dict(type="GF", p=p))
        return _poly_quotient(p, _irreducible(p, k), dict(type="GF", p=p, k=k))
    if t == "poly":
        n = int(spec["n"])
        f = [int(c) % n for c in spec["coeffs"]]
        d = len(f) - 1
        if d < 1 or f[-1] != 1:
            raise RingError("polynomial quotient needs a monic f of degree >= 1")
        return _poly_quotient(n, f, dict(type="poly", n=n, coeffs=list(spec["coeffs"])))
    if t == "table":
        n = int(spec["n"])
        table = tuple(tuple(tuple(c) for c in row) for row in spec["table"])
        desc = {k: spec[k] for k in ("type", "n", "orders", "table", "unit", "name") if k in spec}
        return FiniteRing(n, tuple(spec["orders"]), table, tuple(spec["unit"]), desc)
    if t == "product":
        factors = [make_ring(s) for s in spec["factors"]]
        if not factors:
            raise RingError("empty product")
        return _product(factors, dict(type="product", factors=[F.description for F in factors]))
    raise RingError(f"unknown ring type {t!r}")


_FACTOR = re.compile(r"^(?:Z/(\d+)|F(\d+)|GF\((\d+)\))(?:\[x\]/\((.+)\))?$")


def parse_ring_text(text: str) -> dict[str, Any]:
    """Compact notation: "Z/8", "F4", "F2 x F3", "F2[x]/(x^2)", "Z/4[x]/(x^2 + 1)"."""
    parts = [p.strip().replace(" ", "") for p in re.split(r"\s+x\s+|\*|×", text.strip())]
    if len(parts) > 1:
        return {"type": "product", "factors": [parse_ring_text(p) for p in parts]}
    m = _FACTOR.match(parts[0])
    if not m:
        raise RingError(f"cannot parse ring {text!r}")
    zn, fq, gq, poly = m.groups()
    if zn:
        base = {"type": "Zn", "n": int(zn)}
    else:
        q = int(fq or gq)
        p = next((d for d in range(2, q + 1) if q % d == 0), q)
        k = 0
        while q % p == 0:
            q //= p
            k += 1
        if q != 1:
            raise RingError(f"no field of order {fq or gq}")
        base = {"type": "GF", "p": p} if k == 1 else {"type": "GF", "p": p, "k": k}
    if poly is None:
        return base
    if base["type"] == "GF" and base.get("k", 1) > 1:
        raise RingError("polynomial quotients are supported over Z/n and prime fields only")
    n = base.get("n", base.get("p"))
    return {"type": "poly", "n": n, "coeffs": _parse_univariate(poly)}


def _parse_univariate(s: str) -> list[int]:
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for term in filter(None, s.split("+")):
        m = re.fullmatch(r"(-?\d*)\*?(x(?:\^(\d+))?)?", term)
        if not m or (not m.group(1) and not m.group(2)):
            raise RingError(f"cannot parse polynomial term {term!r}")
        c, x, e = m.groups()
        coef = int(c) if c not in ("", "-") else (-1 if c == "-" else 1)
        deg = 0 if not x else int(e or 1)
        coeffs[deg] = coeffs.get(deg, 0) + coef
    d = max(coeffs)
    return [coeffs.get(i, 0) for i in range(d + 1)]


def _poly_quotient(n: int, f: list[int], desc: dict) -> FiniteRing:
    d = len(f) - 1

    def reduce_poly(c: list[int]) -> list[int]:
        c = c[:] + [0] * max(0, 2 * d - len(c))
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k] % n
            if lead:
                for i in range(d + 1):
                    c[k - d + i] -= lead * f[i]
        return [x % n for x in c[:d]]

    table = []
    for i in range(d):
        row = []
        for j in range(d):
            c = [0] * (i + j + 1)
            c[i + j] = 1
            row.append(tuple(reduce_poly(c)))
        table.append(tuple(row))
    unit = tuple(int(k == 0) for k in range(d))
    return FiniteRing(n, (n,) * d, tuple(table), unit, desc)


def _product(factors: list[FiniteRing], desc: dict) -> FiniteRing:
    n = reduce(lcm, (F.n for F in factors))
    orders = tuple(o for F in factors for o in F.orders)
    offsets = []
    off = 0
    for F in factors:
        offsets.append(off)
        off += F.rank
    b = off
    table = [[(0,) * b for _ in range(b)] for _ in range(b)]
    unit = [0] * b
    for F, o in zip(factors, offsets):
        for i in range(F.rank):
            unit[o + i] = F.unit[i]
            for j in range(F.rank):
                row = [0] * b
                row[o:o + F.rank] = F.table[i][j]
                table[o + i][o + j] = tuple(row)
    return FiniteRing(n, orders, tuple(tuple(r) for r in table), tuple(unit), desc)


# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Ideal:
    """An ideal, stored as the Howell basis of its additive group.

    The basis always contains the ring's relation rows, so equality of
    ideals is equality of bases.
    """

    ring: FiniteRing
    basis: HowellBasis
    generators: tuple[Row, ...] = field(default=())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ideal) and other.ring is self.ring and other.basis == self.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __contains__(self, x: Sequence[int]) -> bool:
        return self.basis.contains(x)

    def __le__(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return other.basis.contains_all(self.basis)

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.basis + other.basis, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return ideal_power(self, k)

    def __repr__(self) -> str:
        return f"Ideal{self.label} of {self.ring!r}"

    @property
    def label(self) -> str:
        gens = [g for g in self.group_generators() if any(g)]
        fmt = (lambda g: str(g[0])) if self.ring.rank == 1 else (lambda g: "(" + ",".join(map(str, g)) + ")")
        return "(" + ", ".join(map(fmt, gens)) + ")" if gens else "(0)"

    def group_generators(self) -> list[Row]:
        """Basis rows as ring elements (they generate the ideal additively)."""
        return [self.ring.normalize(r) for r in self.basis.rows]

    def elements(self) -> list[Row]:
        return sorted({self.ring.normalize(v) for v in self.basis.elements()})

    def cardinality(self) -> int:
        rel = howell_form(self.ring.relation_rows, self.ring.n, self.ring.rank)
        return self.basis.cardinality() // rel.cardinality()

    def is_zero(self) -> bool:
        return not any(any(self.ring.normalize(r)) for r in self.basis.rows)

    def is_unit_ideal(self) -> bool:
        return self.ring.unit in self


def _same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring is not b.ring:
        raise RingError("ideals belong to different rings")


def ideal_generate(R: FiniteRing, gens: Iterable[Sequence[int]]) -> Ideal:
    gens = tuple(R.normalize(g) for g in gens)
    rows = list(R.relation_rows)
    for g in gens:
        rows.extend(R.mul(g, R.basis_element(i)) for i in range(R.rank))
    return Ideal(R, howell_form(rows, R.n, R.rank), gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    R = I.ring
    prods = [R.mul(a, b) for a in I.group_generators() for b in J.group_generators()]
    return ideal_generate(R, prods)


def ideal_power(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("ideal power needs k >= 0")
    out = I.ring.unit_ideal()
    for _ in range(k):
        out = ideal_product(out, I)
    return out


def is_idempotent(I: Ideal) -> bool:
    return ideal_product(I, I) == I


def power_stabilization_index(I: Ideal) -> int:
    """Least k >= 1 with I^k = I^(k+1)."""
    prev = I
    for k in range(1, I.ring.order + 2):
        nxt = ideal_product(prev, I)
        if nxt == prev:
            return k
        prev = nxt
    raise AssertionError("ideal powers failed to stabilize within |R| steps")  # pragma: no cover


def stable_power(I: Ideal) -> Ideal:
    return ideal_power(I, power_stabilization_index(I))


def is_element_radical_member(I: Ideal, r: Sequence[int]) -> bool:
    R = I.ring
    x = R.normalize(r)
    p = x
    for _ in range(R.order):
        if p in I:
            return True
        p = R.mul(p, x)
    return False


def ideal_radical(I: Ideal) -> Ideal:
    """sqrt(I) = {r : r^t in I for some t}, by enumeration of R."""
    R = I.ring
    return ideal_generate(R, [x for x in R.elements() if is_element_radical_member(I, x)])


def generated_by_idempotent_element(I: Ideal) -> Optional[Row]:
    """An idempotent e with (e) = I, if one exists."""
    R = I.ring
    for x in I.elements():
        if R.is_idempotent_element(x) and ideal_generate(R, [x]) == I:
            return x
    return None


def idempotent_ideals(R: FiniteRing) -> list[Ideal]:
    return [J for J in R.ideals if is_idempotent(J)]
