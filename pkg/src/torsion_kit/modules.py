"""Finite modules over finite rings, with a submodule calculus.

A module is a coordinate space (Z/n)^c modulo a relation subgroup, together
with one c x c action matrix per ring basis element (acting on row vectors
from the right).  Submodules are Howell bases that contain the relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Iterable, Iterator, Optional, Sequence

from .linalg import (
    HowellBasis,
    Solver,
    Row,
    abelian_invariants,
    full_basis,
    howell_form,
    identity,
    matmul,
    preimage,
    solve,
    vecmat,
)
from .rings import FiniteRing, Ideal, RingError

DEFAULT_SUBMODULE_BOUND = 256


class ModuleError(ValueError):
    pass


class BoundExceeded(ModuleError):
    """A brute-force enumeration would exceed its configured cardinality bound."""


Matrix = tuple[Row, ...]


def _as_matrix(m: Iterable[Sequence[int]], n: int) -> Matrix:
    return tuple(tuple(x % n for x in row) for row in m)


@dataclass(frozen=True, eq=False)
class FinModule:
    ring: FiniteRing
    ncoords: int
    relations: HowellBasis
    actions: tuple[Matrix, ...]
    label: str = ""
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        R = self.ring
        n, c = R.n, self.ncoords
        if self.relations.modulus != n or self.relations.ncols != c:
            raise ModuleError("relations live in the wrong ambient space")
        if len(self.actions) != R.rank:
            raise ModuleError("need one action matrix per ring basis element")
        acts = tuple(_as_matrix(A, n) for A in self.actions)
        object.__setattr__(self, "actions", acts)
        for A in acts:
            if len(A) != c or any(len(r) != c for r in A):
                raise ModuleError("action matrix has the wrong shape")
        if self.check:
            self._validate()

    def _validate(self) -> None:
        R, n, c, rel = self.ring, self.ring.n, self.ncoords, self.relations
        for A in self.actions:
            for r in rel.rows:
                if not rel.contains(vecmat(r, A, n, c)):
                    raise ModuleError("action does not preserve the relations")
        basis = [tuple(row) for row in identity(c)]
        for e in basis:
            if not self._same(self.act(R.unit, e), e):
                raise ModuleError("the unit does not act as the identity")
            for i, o in enumerate(R.orders):
                if not rel.contains([o * x for x in vecmat(e, self.actions[i], n, c)]):
                    raise ModuleError(f"additive order of ring basis element {i} is not respected")
            for i in range(R.rank):
                ei = vecmat(e, self.actions[i], n, c)
                for j in range(i, R.rank):
                    lhs = vecmat(ei, self.actions[j], n, c)
                    rhs = self.act(R.table[i][j], e)
                    if not self._same(lhs, rhs):
                        raise ModuleError(f"actions of e{i}, e{j} do not compose like the ring")
                    other = vecmat(vecmat(e, self.actions[j], n, c), self.actions[i], n, c)
                    if not self._same(lhs, other):
                        raise ModuleError(f"actions of e{i}, e{j} do not commute")

    def _same(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.relations.contains([a - b for a, b in zip(u, v)])

    # -- elements ------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.ring.n

    def action_matrix(self, x: Sequence[int]) -> list[list[int]]:
        n, c = self.n, self.ncoords
        out = [[0] * c for _ in range(c)]
        for coef, A in zip(x, self.actions):
            if coef:
                for i in range(c):
                    for j in range(c):
                        out[i][j] += coef * A[i][j]
        return [[v % n for v in row] for row in out]

    def act(self, x: Sequence[int], m: Sequence[int]) -> Row:
        """The element x.m, reduced to its canonical representative."""
        n, c = self.n, self.ncoords
        out = [0] * c
        for coef, A in zip(x, self.actions):
            if coef:
                w = vecmat(m, A, n, c)
                out = [a + coef * b for a, b in zip(out, w)]
        return self.relations.reduce(out)

    def canonical(self, m: Sequence[int]) -> Row:
        return self.relations.reduce(m)

    def add(self, u: Sequence[int], v: Sequence[int]) -> Row:
        return self.canonical([a + b for a, b in zip(u, v)])

    def zero(self) -> Row:
        return (0,) * self.ncoords

    def elements(self) -> Iterator[Row]:
        """Canonical representatives, one per element."""
        n = self.n
        limits = [n] * self.ncoords
        for row, p in zip(self.relations.rows, self.relations.pivots):
            limits[p] = row[p]
        return product(*(range(k) for k in limits))

    @cached_property
    def cardinality(self) -> int:
        return self.n ** self.ncoords // self.relations.cardinality()

    def __len__(self) -> int:
        return self.cardinality

    def is_zero(self) -> bool:
        return self.cardinality == 1

    def abelian_invariants(self) -> tuple[int, ...]:
        return abelian_invariants(self.relations.rows, self.n, self.ncoords)

    # -- submodules ----------------------------------------------------------
    def submodule(self, gens: Iterable[Sequence[int]] = ()) -> "Submodule":
        """R-submodule generated by ``gens``."""
        n, c = self.n, self.ncoords
        rows = list(self.relations.rows)
        for g in gens:
            for A in self.actions:
                rows.append(vecmat(g, A, n, c))
        return Submodule(self, howell_form(rows, n, c))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, self.relations)

    def full(self) -> "Submodule":
        return Submodule(self, full_basis(self.n, self.ncoords))

    def __repr__(self) -> str:
        name = self.label or f"module with {self.ncoords} coords"
        return f"FinModule({name}, |M|={self.cardinality}, over {self.ring!r})"


@dataclass(frozen=True, eq=False)
class Submodule:
    module: FinModule
    basis: HowellBasis

    def __post_init__(self):
        M = self.module
        if not self.basis.contains_all(M.relations):
            object.__setattr__(self, "basis", self.basis + M.relations)

    def check_closed(self) -> None:
        M = self.module
        for r in self.basis.rows:
            for A in M.actions:
                if not self.basis.contains(vecmat(r, A, M.n, M.ncoords)):
                    raise ModuleError("subgroup is not closed under the ring action")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Submodule) and other.module is self.module and other.basis == self.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __contains__(self, m: Sequence[int]) -> bool:
        return self.basis.contains(m)

    def __le__(self, other: "Submodule") -> bool:
        self._check(other)
        return other.basis.contains_all(self.basis)

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self != other

    def __add__(self, other: "Submodule") -> "Submodule":
        self._check(other)
        return Submodule(self.module, self.basis + other.basis)

    def __and__(self, other: "Submodule") -> "Submodule":
        self._check(other)
        return Submodule(self.module, self.basis & other.basis)

    def _check(self, other: "Submodule") -> None:
        if other.module is not self.module:
            raise ModuleError("submodules of different modules")

    @property
    def cardinality(self) -> int:
        return self.basis.cardinality() // self.module.relations.cardinality()

    def __len__(self) -> int:
        return self.cardinality

    def is_zero(self) -> bool:
        return self.basis == self.module.relations

    def is_full(self) -> bool:
        return self.cardinality == self.module.cardinality

    def elements(self) -> list[Row]:
        M = self.module
        return sorted({M.canonical(v) for v in self.basis.elements()})

    def generators(self) -> list[Row]:
        """Additive generators (basis rows that are nonzero in the module)."""
        M = self.module
        return [r for r in self.basis.rows if any(M.canonical(r))]

    def __repr__(self) -> str:
        return f"Submodule(|N|={self.cardinality} in {self.module!r})"


# ---------------------------------------------------------------------------
# constructors

def regular_module(R: FiniteRing) -> FinModule:
    return free_module(R, 1, label="R")


def free_module(R: FiniteRing, k: int, label: str = "") -> FinModule:
    b, n = R.rank, R.n
    c = k * b
    rels = []
    for blk in range(k):
        for r in R.relation_rows:
            row = [0] * c
            row[blk * b:(blk + 1) * b] = r
            rels.append(row)
    actions = []
    for t in range(b):
        mt = R.mult_matrix(R.basis_element(t))
        A = [[0] * c for _ in range(c)]
        for blk in range(k):
            for i in range(b):
                for j in range(b):
                    A[blk * b + i][blk * b + j] = mt[i][j]
        actions.append(A)
    return FinModule(R, c, howell_form(rels, n, c), tuple(actions), label or f"R^{k}")


def cyclic_module(J: Ideal) -> FinModule:
    """R/J."""
    R = J.ring
    F = regular_module(R)
    return FinModule(R, R.rank, J.basis, F.actions, "R" if J.is_zero() else f"R/{J.label}", check=False)


def subquotient(R: FiniteRing, S: HowellBasis, Z: HowellBasis, actions: Sequence[Sequence[Sequence[int]]],
                label: str = "") -> tuple[FinModule, Matrix]:
    """Present S/Z as a module in the coordinates of S's basis rows.

    ``actions`` act on the ambient space and must preserve S and Z.  Returns
    the module and the embedding matrix (new coordinates -> ambient).
    """
    n, m = R.n, S.ncols
    gens = S.rows
    k = len(gens)
    rel = preimage(gens, Z, nrows=k) if k else howell_form([], n, 0)
    acts = []
    lift = Solver(gens, n, m)
    for A in actions:
        rows = []
        for g in gens:
            y = lift(vecmat(g, A, n, m))
            if y is None:
                raise ModuleError("action does not preserve the subgroup")
            rows.append(y)
        acts.append(tuple(rows))
    return FinModule(R, k, rel, tuple(acts), label, check=False), tuple(gens)


def submodule_as_module(N: Submodule, label: str = "") -> tuple[FinModule, "ModuleMap"]:
    """N as a module in its own right, with the inclusion map into its parent."""
    M = N.module
    Nm, emb = subquotient(M.ring, N.basis, M.relations, M.actions, label)
    return Nm, ModuleMap(Nm, M, emb)


def quotient_module(M: FinModule, N: Submodule, label: str = "") -> tuple[FinModule, "ModuleMap"]:
    """M/N with its canonical projection."""
    if N.module is not M:
        raise ModuleError("N is not a submodule of M")
    N.check_closed()
    Q = FinModule(M.ring, M.ncoords, N.basis, M.actions, label or f"{M.label}/N", check=False)
    return Q, ModuleMap(M, Q, tuple(tuple(r) for r in identity(M.ncoords)), check=False)


def direct_sum(*mods: FinModule, label: str = "") -> FinModule:
    if not mods:
        raise ModuleError("direct sum of nothing; pass the ring's zero module instead")
    R = mods[0].ring
    if any(M.ring is not R for M in mods):
        raise ModuleError("direct summands over different rings")
    n = R.n
    c = sum(M.ncoords for M in mods)
    rels, off = [], 0
    actions = [[[0] * c for _ in range(c)] for _ in range(R.rank)]
    for M in mods:
        for r in M.relations.rows:
            row = [0] * c
            row[off:off + M.ncoords] = r
            rels.append(row)
        for t, A in enumerate(M.actions):
            for i in range(M.ncoords):
                for j in range(M.ncoords):
                    actions[t][off + i][off + j] = A[i][j]
        off += M.ncoords
    return FinModule(R, c, howell_form(rels, n, c), tuple(tuple(map(tuple, A)) for A in actions),
                     label or " + ".join(M.label or "M" for M in mods), check=False)


def zero_module(R: FiniteRing) -> FinModule:
    return FinModule(R, 0, howell_form([], R.n, 0), tuple(() for _ in range(R.rank)), "0")


def summand_maps(mods: Sequence[FinModule], total: FinModule) -> tuple[list["ModuleMap"], list["ModuleMap"]]:
    """Canonical injections into and projections out of ``direct_sum(*mods)``."""
    inj, proj, off = [], [], 0
    c = total.ncoords
    for M in mods:
        e = tuple(tuple(int(j == off + i) for j in range(c)) for i in range(M.ncoords))
        p = tuple(tuple(int(i == off + j) for j in range(M.ncoords)) for i in range(c))
        inj.append(ModuleMap(M, total, e, check=False))
        proj.append(ModuleMap(total, M, p, check=False))
        off += M.ncoords
    return inj, proj


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FinModule
    target: FinModule
    matrix: Matrix
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        S, T = self.source, self.target
        if S.ring is not T.ring:
            raise ModuleError("map between modules over different rings")
        object.__setattr__(self, "matrix", _as_matrix(self.matrix, S.n))
        if len(self.matrix) != S.ncoords or any(len(r) != T.ncoords for r in self.matrix):
            raise ModuleError("map matrix has the wrong shape")
        if self.check:
            self._validate()

    def _validate(self) -> None:
        S, T = self.source, self.target
        for r in S.relations.rows:
            if any(self(r)):
                raise ModuleError("map is not well defined on the source relations")
        for e in identity(S.ncoords):
            for i in range(S.ring.rank):
                x = S.ring.basis_element(i)
                if self(S.act(x, e)) != T.act(x, self(e)):
                    raise ModuleError("map is not R-linear")

    def __call__(self, m: Sequence[int]) -> Row:
        T = self.target
        return T.canonical(vecmat(m, self.matrix, T.n, T.ncoords))

    def image(self, N: Optional[Submodule] = None) -> Submodule:
        N = N or self.source.full()
        T = self.target
        rows = [vecmat(r, self.matrix, T.n, T.ncoords) for r in N.basis.rows]
        return Submodule(T, howell_form(rows, T.n, T.ncoords))

    def kernel(self) -> Submodule:
        S = self.source
        return Submodule(S, preimage(self.matrix, self.target.relations, nrows=S.ncoords))

    def preimage(self, N: Submodule) -> Submodule:
        return Submodule(self.source, preimage(self.matrix, N.basis, nrows=self.source.ncoords))

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_surjective(self) -> bool:
        return self.image().is_full()

    def is_zero(self) -> bool:
        return self.image().is_zero()

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        if first.target is not self.source:
            raise ModuleError("maps are not composable")
        return ModuleMap(first.source, self.target, matmul(first.matrix, self.matrix, self.source.n), check=False)


def identity_map(M: FinModule) -> ModuleMap:
    return ModuleMap(M, M, tuple(tuple(r) for r in identity(M.ncoords)), check=False)


def free_map(R: FiniteRing, entries: Sequence[Sequence[Sequence[int]]], source: FinModule,
             target: FinModule) -> ModuleMap:
    """Map R^a -> R^b sending generator i to the row (entries[i][0], ..., entries[i][b-1])."""
    b = R.rank
    rows = []
    for row_elems in entries:
        for t in range(b):
            e = R.basis_element(t)
            coords: list[int] = []
            for x in row_elems:
                coords.extend(R.mul(e, x))
            rows.append(coords)
    return ModuleMap(source, target, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# submodule operations

def annihilator_submodule(M: FinModule, J: Ideal, N: Optional[Submodule] = None) -> Submodule:
    """(0 :_N J) = {m in N : J m = 0}; N defaults to M."""
    _check_ring(M, J)
    out = N or M.full()
    for g in J.group_generators():
        A = M.action_matrix(g)
        out = out & Submodule(M, preimage(A, M.relations, nrows=M.ncoords))
    return out


def ideal_scale(M: FinModule, J: Ideal, N: Optional[Submodule] = None) -> Submodule:
    """J N, the submodule generated by products j n; N defaults to M."""
    _check_ring(M, J)
    N = N or M.full()
    n, c = M.n, M.ncoords
    rows = list(M.relations.rows)
    for g in J.group_generators():
        A = M.action_matrix(g)
        rows.extend(vecmat(r, A, n, c) for r in N.basis.rows)
    return Submodule(M, howell_form(rows, n, c))


def element_annihilator(M: FinModule, m: Sequence[int]) -> Ideal:
    """(0 :_R m) as an ideal of R."""
    from .rings import ideal_generate

    R = M.ring
    return ideal_generate(R, [x for x in R.elements() if not any(M.act(x, m))])


def _check_ring(M: FinModule, J: Ideal) -> None:
    if J.ring is not M.ring:
        raise RingError("ideal and module live over different rings")


def hom_module(M: FinModule, N: FinModule) -> tuple[FinModule, "HomEmbedding"]:
    """Hom_R(M, N) as an R-module, with a decoder from its coordinates to map matrices."""
    if M.ring is not N.ring:
        raise ModuleError("Hom between modules over different rings")
    R, n = M.ring, M.n
    cm, cn = M.ncoords, N.ncoords
    nunk = cm * cn
    blocks: list[list[list[int]]] = []  # each block: nunk x cn linear map

    def new_block() -> list[list[int]]:
        return [[0] * cn for _ in range(nunk)]

    for r in M.relations.rows:
        B = new_block()
        for i in range(cm):
            for j in range(cn):
                B[i * cn + j][j] += r[i]
        blocks.append(B)
    for A_M, A_N in zip(M.actions, N.actions):
        for i in range(cm):
            B = new_block()
            for l in range(cm):
                for j in range(cn):
                    B[l * cn + j][j] += A_M[i][l]
            for l in range(cn):
                for j in range(cn):
                    B[i * cn + l][j] -= A_N[l][j]
            blocks.append(B)
    nb = len(blocks)
    L = [[x % n for blk in blocks for x in blk[u]] for u in range(nunk)] if nb else [[] for _ in range(nunk)]
    target_rows = []
    for b in range(nb):
        for r in N.relations.rows:
            row = [0] * (nb * cn)
            row[b * cn:(b + 1) * cn] = r
            target_rows.append(row)
    target = howell_form(target_rows, n, nb * cn)
    S = preimage(L, target, nrows=nunk)
    Z_rows = []
    for i in range(cm):
        for r in N.relations.rows:
            row = [0] * nunk
            row[i * cn:(i + 1) * cn] = r
            Z_rows.append(row)
    Z = howell_form(Z_rows, n, nunk)
    actions = []
    for A_N in N.actions:
        A = [[0] * nunk for _ in range(nunk)]
        for i in range(cm):
            for l in range(cn):
                for j in range(cn):
                    A[i * cn + l][i * cn + j] = A_N[l][j]
        actions.append(A)
    H, emb = subquotient(R, S, Z, actions, f"Hom({M.label},{N.label})")
    return H, HomEmbedding(M, N, H, emb)


@dataclass(frozen=True, eq=False)
class HomEmbedding:
    source: FinModule
    target: FinModule
    hom: FinModule
    embedding: Matrix

    def to_map(self, y: Sequence[int]) -> ModuleMap:
        cm, cn, n = self.source.ncoords, self.target.ncoords, self.source.n
        flat = vecmat(y, self.embedding, n, cm * cn)
        X = tuple(tuple(flat[i * cn:(i + 1) * cn]) for i in range(cm))
        return ModuleMap(self.source, self.target, X, check=False)

    def evaluation(self, m: Sequence[int]) -> ModuleMap:
        """The R-linear map Hom(M, N) -> N, f -> f(m)."""
        rows = [self.to_map(e)(m) for e in identity(self.hom.ncoords)]
        return ModuleMap(self.hom, self.target, tuple(rows))


def enumerate_submodules(M: FinModule, bound: int = DEFAULT_SUBMODULE_BOUND) -> list[Submodule]:
    """All submodules of M (|M| <= bound), smallest first, each listed once."""
    if M.cardinality > bound:
        raise BoundExceeded(f"|M| = {M.cardinality} exceeds the submodule bound {bound}")
    cyclic: dict[HowellBasis, Submodule] = {}
    for m in M.elements():
        C = M.submodule([m])
        cyclic.setdefault(C.basis, C)
    zero = M.zero_submodule()
    seen = {zero.basis: zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic.values():
                if S.basis.contains_all(C.basis):
                    continue
                T = S + C
                if T.basis not in seen:
                    seen[T.basis] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(seen.values(), key=lambda S: (S.cardinality, S.basis.rows))


def module_signature(M: FinModule) -> tuple:
    """(|M|, |(0:_M J)| for every ideal J): a complete isomorphism invariant over
    finite principal ideal rings, used only to deduplicate enumerated families."""
    return (M.cardinality,) + tuple(annihilator_submodule(M, J).cardinality for J in M.ring.ideals)


def module_invariants(M: FinModule) -> tuple:
    """Isomorphism invariants valid over any ring (complete only over principal ideal rings)."""
    R = M.ring
    return (module_signature(M), M.abelian_invariants(),
            tuple(ideal_scale(M, J).cardinality for J in R.ideals))


def is_isomorphic(M: FinModule, N: FinModule, max_hom: int = 1 << 14) -> Optional[bool]:
    """Decide M = N up to isomorphism; None when Hom(M, N) is too large to search."""
    if M.cardinality != N.cardinality or module_invariants(M) != module_invariants(N):
        return False
    if M.ring.is_principal_ideal_ring():
        return True
    H, emb = hom_module(M, N)
    if H.cardinality > max_hom:
        return None
    # equal finite orders: injective iff the image is everything
    return any(emb.to_map(y).image().cardinality == N.cardinality for y in H.elements())


def is_indecomposable(M: FinModule, max_hom: int = 1 << 14) -> Optional[bool]:
    """No idempotent endomorphism other than 0 and 1; None when End(M) is too large to search."""
    if M.is_zero():
        return False
    H, emb = hom_module(M, M)
    if H.cardinality > max_hom:
        return None
    basis = [tuple(e) for e in identity(M.ncoords)]
    ident = [M.canonical(e) for e in basis]
    zero = [M.zero()] * len(basis)
    for y in H.elements():
        f = emb.to_map(y)
        img = [f(e) for e in basis]
        if img in (ident, zero):
            continue
        if [f(v) for v in img] == img:
            return False
    return True


def module_to_dict(M: FinModule) -> dict[str, Any]:
    return {
        "label": M.label,
        "ring": M.ring.description,
        "ncoords": M.ncoords,
        "relations": [list(r) for r in M.relations.rows],
        "actions": [[list(r) for r in A] for A in M.actions],
        "order": M.cardinality,
    }


def module_from_dict(d: dict[str, Any], ring: Optional[FiniteRing] = None) -> FinModule:
    from .rings import make_ring

    R = ring or make_ring(d["ring"])
    c = d["ncoords"]
    return FinModule(R, c, howell_form(d["relations"], R.n, c),
                     tuple(tuple(tuple(r) for r in A) for A in d["actions"]), d.get("label", ""))
