"""Free resolutions, Ext/Tor, local (co)homology and Koszul complexes over finite rings.

Free modules R^k use k blocks of ring coordinates.  A map between free
modules is stored twice: as a coordinate :class:`ModuleMap` and as a matrix
of ring elements (row j = image of the j-th generator, split by block).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .linalg import Row, solve, vecmat
from .modules import (
    FinModule,
    ModuleMap,
    Submodule,
    annihilator_submodule,
    cyclic_module,
    direct_sum,
    free_module,
    hom_module,
    ideal_scale,
    subquotient,
    zero_module,
)
from .report import UNDETERMINED, Report
from .rings import (
    FiniteRing,
    Ideal,
    RingError,
    generated_by_idempotent_element,
    ideal_power,
    is_idempotent,
    power_stabilization_index,
)
from .torsion import chain_profile, gamma

DEFAULT_RESOLUTION_LENGTH = 4
DEFAULT_OFFSET_BOUND = 8

RingMatrix = tuple[tuple[Row, ...], ...]


class NotComputed(RuntimeError):
    """Requested degree lies beyond the computed truncation."""


# ---------------------------------------------------------------------------
# complexes

def _free(R: FiniteRing, k: int) -> FinModule:
    return free_module(R, k) if k else zero_module(R)


def _blocks(R: FiniteRing, v: Sequence[int], k: int) -> tuple[Row, ...]:
    b = R.rank
    return tuple(R.normalize(v[i * b:(i + 1) * b]) for i in range(k))


def _generator(R: FiniteRing, k: int, j: int) -> list[int]:
    b = R.rank
    v = [0] * (k * b)
    v[j * b:(j + 1) * b] = R.unit
    return v


def free_hom(R: FiniteRing, entries: Sequence[Sequence[Sequence[int]]], a: int, b: int) -> ModuleMap:
    """R^a -> R^b sending generator j to (entries[j][0], ..., entries[j][b-1])."""
    rk = R.rank
    src, tgt = _free(R, a), _free(R, b)
    rows = []
    for j in range(a):
        for t in range(rk):
            e = R.basis_element(t)
            row: list[int] = []
            for x in entries[j]:
                row.extend(R.mul(e, x))
            rows.append(tuple(row))
    return ModuleMap(src, tgt, tuple(rows), check=False)


def ring_entries(f: ModuleMap, a: int, b: int) -> RingMatrix:
    R = f.source.ring
    return tuple(_blocks(R, vecmat(_generator(R, a, j), f.matrix, R.n, f.target.ncoords), b)
                 for j in range(a))


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """A bounded complex C_lo -> ... -> C_hi (cohomological) or its homological mirror.

    ``modules[i]`` sits in degree ``lo + i``.  For a cohomological complex
    ``maps[i]`` goes modules[i] -> modules[i+1]; for a homological one it goes
    modules[i+1] -> modules[i].
    """

    ring: FiniteRing
    modules: tuple[FinModule, ...]
    maps: tuple[ModuleMap, ...]
    cohomological: bool = True
    lo: int = 0

    def __post_init__(self):
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise ValueError("need one map between consecutive terms")
        for i, f in enumerate(self.maps):
            s, t = (i, i + 1) if self.cohomological else (i + 1, i)
            if f.source is not self.modules[s] or f.target is not self.modules[t]:
                raise ValueError(f"map {i} does not connect the right terms")
        for i in range(len(self.maps) - 1):
            f, g = self.maps[i], self.maps[i + 1]
            comp = g.compose(f) if self.cohomological else f.compose(g)
            if not comp.is_zero():
                raise ValueError(f"d o d != 0 at position {i}")

    @property
    def ranks(self) -> tuple[int, ...]:
        b = self.ring.rank
        return tuple(M.ncoords // b for M in self.modules)

    def _incoming(self, i: int) -> Optional[ModuleMap]:
        if self.cohomological:
            return self.maps[i - 1] if i > 0 else None
        return self.maps[i] if i < len(self.maps) else None

    def _outgoing(self, i: int) -> Optional[ModuleMap]:
        if self.cohomological:
            return self.maps[i] if i < len(self.maps) else None
        return self.maps[i - 1] if i > 0 else None

    def cycles(self, degree: int) -> Submodule:
        i = degree - self.lo
        out = self._outgoing(i)
        return out.kernel() if out else self.modules[i].full()

    def boundaries(self, degree: int) -> Submodule:
        i = degree - self.lo
        inc = self._incoming(i)
        return inc.image() if inc else self.modules[i].zero_submodule()

    def homology(self, degree: int) -> tuple[FinModule, tuple[Row, ...]]:
        """The (co)homology at ``degree`` with the embedding of its coordinates."""
        i = degree - self.lo
        if not 0 <= i < len(self.modules):
            return zero_module(self.ring), ()
        M = self.modules[i]
        return subquotient(self.ring, self.cycles(degree).basis, self.boundaries(degree).basis,
                           M.actions, f"H{degree}")


# ---------------------------------------------------------------------------
# resolutions

def _generators(N: Submodule, reverse: bool = False) -> list[Row]:
    """Deterministic generating set: the Howell rows of N that are not already
    in the span of earlier ones, then pairs g, h merged into g + h whenever
    that single element generates both."""
    M = N.module
    rows = list(N.basis.rows)
    if reverse:
        rows.reverse()
    gens: list[Row] = []
    span = M.zero_submodule()
    for r in rows:
        if r not in span:
            gens.append(M.canonical(r))
            span = span + M.submodule([r])
    merged = True
    while merged:
        merged = False
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                s = M.add(gens[i], gens[j])
                C = M.submodule([s])
                if gens[i] in C and gens[j] in C:
                    gens[i] = s
                    del gens[j]
                    merged = True
                    break
            if merged:
                break
    return gens


def _onto(R: FiniteRing, gens: Sequence[Row], M: FinModule) -> ModuleMap:
    rows = [M.act(R.basis_element(t), g) for g in gens for t in range(R.rank)]
    return ModuleMap(_free(R, len(gens)), M, tuple(rows), check=False)


@dataclass(frozen=True, eq=False)
class FreeResolution:
    """F_L -> ... -> F_0 -> M with every position checked exact."""

    module: FinModule
    ranks: tuple[int, ...]
    augmentation: ModuleMap
    differentials: tuple[ModuleMap, ...]  # differentials[q-1] = d_q : F_q -> F_(q-1)
    entries: tuple[RingMatrix, ...]

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    @property
    def generators(self) -> tuple[Row, ...]:
        R = self.module.ring
        return tuple(self.augmentation(_generator(R, self.ranks[0], j)) for j in range(self.ranks[0]))

    def complex(self) -> ChainComplex:
        mods = [self.augmentation.source] + [d.source for d in self.differentials]
        return ChainComplex(self.module.ring, tuple(mods), self.differentials, cohomological=False)


def free_resolution(M: FinModule, length: int, reverse: bool = False) -> FreeResolution:
    """A free resolution truncated after F_length."""
    if length < 0:
        raise ValueError("length must be non-negative")
    return _resolve(M, length, reverse)


@lru_cache(maxsize=512)
def _resolve(M: FinModule, length: int, reverse: bool) -> FreeResolution:
    R = M.ring
    gens = _generators(M.full(), reverse) if not M.is_zero() else []
    eps = _onto(R, gens, M)
    if not eps.is_surjective():  # pragma: no cover
        raise AssertionError("augmentation is not onto")
    ranks, diffs, ents = [len(gens)], [], []
    K = eps.kernel()
    for _ in range(length):
        F = K.module
        g = _generators(K, reverse) if not K.is_zero() else []
        d = _onto(R, g, F)
        if d.image() != K:  # pragma: no cover
            raise AssertionError("resolution is not exact")
        ranks.append(len(g))
        diffs.append(d)
        ents.append(tuple(_blocks(R, x, ranks[-2]) for x in g))
        K = d.kernel()
    return FreeResolution(M, tuple(ranks), eps, tuple(diffs), tuple(ents))


@lru_cache(maxsize=1024)
def _power(M: FinModule, k: int) -> FinModule:
    return direct_sum(*([M] * k)) if k else zero_module(M.ring)


def _hom_differential(ent: RingMatrix, M: FinModule, src: FinModule, tgt: FinModule) -> ModuleMap:
    """Hom(F_q, M) = M^a -> Hom(F_(q+1), M) = M^b for d_(q+1) with ring matrix ``ent`` (b x a)."""
    c = M.ncoords
    a, b = src.ncoords // c if c else 0, len(ent)
    rows = []
    for i in range(a):
        for e in range(c):
            v = [0] * c
            v[e] = 1
            row: list[int] = []
            for j in range(b):
                row.extend(M.act(ent[j][i], v))
            rows.append(tuple(row))
    return ModuleMap(src, tgt, tuple(rows), check=False)


def _tensor_differential(ent: RingMatrix, M: FinModule, src: FinModule, tgt: FinModule, a: int) -> ModuleMap:
    """F_(q+1) (x) M = M^b -> F_q (x) M = M^a."""
    c = M.ncoords
    b = len(ent)
    rows = []
    for j in range(b):
        for e in range(c):
            v = [0] * c
            v[e] = 1
            row: list[int] = []
            for i in range(a):
                row.extend(M.act(ent[j][i], v))
            rows.append(tuple(row))
    return ModuleMap(src, tgt, tuple(rows), check=False)


def hom_complex(F: FreeResolution, M: FinModule) -> ChainComplex:
    """Hom(F_., M), cohomological, degree 0 first."""
    mods = [_power(M, k) for k in F.ranks]
    maps = []
    for q, ent in enumerate(F.entries):
        maps.append(_hom_differential(ent, M, mods[q], mods[q + 1]))
    return ChainComplex(M.ring, tuple(mods), tuple(maps), cohomological=True)


def tensor_complex(F: FreeResolution, M: FinModule) -> ChainComplex:
    """F_. (x) M, homological."""
    mods = [_power(M, k) for k in F.ranks]
    maps = []
    for q, ent in enumerate(F.entries):
        maps.append(_tensor_differential(ent, M, mods[q + 1], mods[q], F.ranks[q]))
    return ChainComplex(M.ring, tuple(mods), tuple(maps), cohomological=False)


def _check_degree(q: int, length: int) -> None:
    if q < 0:
        raise ValueError("degree must be non-negative")
    if q > length:
        raise NotComputed(f"degree {q} exceeds the resolution length {length}")


@lru_cache(maxsize=1024)
def _hom_cx(A: FinModule, M: FinModule, length: int, reverse: bool) -> ChainComplex:
    return hom_complex(free_resolution(A, length + 1, reverse), M)


@lru_cache(maxsize=1024)
def _tensor_cx(A: FinModule, M: FinModule, length: int, reverse: bool) -> ChainComplex:
    return tensor_complex(free_resolution(A, length + 1, reverse), M)


def ext(q: int, A: FinModule, M: FinModule, length: int = DEFAULT_RESOLUTION_LENGTH,
        reverse: bool = False) -> FinModule:
    """Ext^q_R(A, M); degrees above ``length`` raise :class:`NotComputed`."""
    _check_degree(q, length)
    if A.is_zero() or M.is_zero():
        return zero_module(M.ring)
    return _hom_cx(A, M, length, reverse).homology(q)[0]


def tor(q: int, A: FinModule, M: FinModule, length: int = DEFAULT_RESOLUTION_LENGTH,
        reverse: bool = False) -> FinModule:
    """Tor_q^R(A, M); degrees above ``length`` raise :class:`NotComputed`."""
    _check_degree(q, length)
    if A.is_zero() or M.is_zero():
        return zero_module(M.ring)
    return _tensor_cx(A, M, length, reverse).homology(q)[0]


def _unit_coefficients(F: FreeResolution) -> Row:
    """Ring elements a_j with sum a_j g_j = class of 1 in a cyclic A = R/J."""
    A = F.module
    R = A.ring
    one = A.canonical(R.unit)
    rows = F.augmentation.matrix + A.relations.rows
    y = solve(rows, one, R.n)
    if y is None:  # pragma: no cover
        raise AssertionError("1 is not in the image of the augmentation")
    return _blocks(R, y[:len(F.augmentation.matrix)], F.ranks[0])


def hom_evaluation(F: FreeResolution, M: FinModule) -> tuple[FinModule, ModuleMap]:
    """Ext^0(A, M) for cyclic A = R/J, with f -> f(1) into M."""
    H, emb = hom_complex(F, M).homology(0)
    a = _unit_coefficients(F)
    c = M.ncoords
    rows = []
    for y in emb:
        out = [0] * c
        for j, aj in enumerate(a):
            w = M.act(aj, y[j * c:(j + 1) * c])
            out = [u + v for u, v in zip(out, w)]
        rows.append(tuple(out))
    return H, ModuleMap(H, M, tuple(rows))


def tensor_unit_map(F: FreeResolution, M: FinModule) -> tuple[FinModule, ModuleMap]:
    """Tor_0(A, M) for cyclic A = R/J, with m -> 1 (x) m out of M."""
    C = tensor_complex(F, M)
    top = C.modules[0]
    Q = FinModule(M.ring, top.ncoords, C.boundaries(0).basis, top.actions, "Tor0")
    a = _unit_coefficients(F)
    c = M.ncoords
    rows = []
    for e in range(c):
        v = [0] * c
        v[e] = 1
        row: list[int] = []
        for aj in a:
            row.extend(M.act(aj, v))
        rows.append(tuple(row))
    return Q, ModuleMap(M, Q, tuple(rows))


# ---------------------------------------------------------------------------
# local (co)homology

@lru_cache(maxsize=256)
def stable_quotient(I: Ideal) -> FinModule:
    """R/I^s at the power stabilization index s; asserts I^s = I^(s+1)."""
    s = power_stabilization_index(I)
    P = ideal_power(I, s)
    if P != ideal_power(I, s + 1):  # pragma: no cover
        raise AssertionError("power chain did not stabilize")
    return _stable_quotient(P)


@lru_cache(maxsize=256)
def _stable_quotient(P: Ideal) -> FinModule:
    return cyclic_module(P)


def local_cohomology(q: int, I: Ideal, M: FinModule, length: int = DEFAULT_RESOLUTION_LENGTH) -> FinModule:
    """H^q_I(M) = lim_k Ext^q(R/I^k, M), read off at the stable power."""
    return ext(q, stable_quotient(I), M, length)


def local_homology(q: int, I: Ideal, M: FinModule, length: int = DEFAULT_RESOLUTION_LENGTH) -> FinModule:
    """H_q^I(M) = lim_k Tor_q(R/I^k, M), read off at the stable power."""
    return tor(q, stable_quotient(I), M, length)


def local_cohomology_zero(I: Ideal, M: FinModule) -> tuple[FinModule, ModuleMap]:
    """H^0_I(M) with its evaluation map into M (injective, image Gamma_I(M))."""
    A = stable_quotient(I)
    return hom_evaluation(free_resolution(A, 1), M)


def local_homology_zero(I: Ideal, M: FinModule) -> tuple[FinModule, ModuleMap]:
    """H_0^I(M) with the canonical surjection from M (kernel I^s M)."""
    A = stable_quotient(I)
    return tensor_unit_map(free_resolution(A, 1), M)


# ---------------------------------------------------------------------------
# Koszul complexes

def _subsets(t: int, p: int) -> list[tuple[int, ...]]:
    return list(combinations(range(t), p))


def koszul_complex(R: FiniteRing, r: Sequence[Sequence[int]]) -> ChainComplex:
    """K(R; r) in cohomological degrees -t .. 0 (degree -p holds the p-th exterior power)."""
    r = [R.normalize(x) for x in r]
    t = len(r)
    mods = [_free(R, len(_subsets(t, p))) for p in range(t, -1, -1)]
    maps = []
    for p in range(t, 0, -1):
        src, tgt = _subsets(t, p), _subsets(t, p - 1)
        index = {S: i for i, S in enumerate(tgt)}
        ents = []
        for S in src:
            row = [R.zero()] * len(tgt)
            for pos, l in enumerate(S):
                x = r[l] if pos % 2 == 0 else R.neg(r[l])
                row[index[S[:pos] + S[pos + 1:]]] = x
            ents.append(row)
        f = free_hom(R, ents, len(src), len(tgt))
        i = t - p
        maps.append(ModuleMap(mods[i], mods[i + 1], f.matrix, check=False))
    return ChainComplex(R, tuple(mods), tuple(maps), cohomological=True, lo=-t)


def koszul_cohomology(R: FiniteRing, r: Sequence[Sequence[int]], p: int) -> FinModule:
    t = len(r)
    if not -t <= p <= 0:
        raise ValueError(f"Koszul degrees run from {-t} to 0")
    return koszul_complex(R, r).homology(p)[0]


def koszul_tower_map(R: FiniteRing, r: Sequence[Sequence[int]], i: int, j: int, p: int) -> ModuleMap:
    """Degree-p component K^p(r^j) -> K^p(r^i): e_S -> prod_{l in S} r_l^(j-i) e_S."""
    if j < i:
        raise ValueError("tower maps go from r^j to r^i with j >= i")
    t = len(r)
    S_list = _subsets(t, -p)
    k = len(S_list)
    ents = []
    for a, S in enumerate(S_list):
        c = R.unit
        for l in S:
            c = R.mul(c, R.power(r[l], j - i))
        row = [R.zero()] * k
        row[a] = c
        ents.append(row)
    return free_hom(R, ents, k, k)


def _powers(R: FiniteRing, r: Sequence[Sequence[int]], k: int) -> list[Row]:
    return [R.power(R.normalize(x), k) for x in r]


@dataclass
class ProZeroVerdict:
    """For each (p, i) the least j in (i, i+offset_bound] with a zero tower map, or None."""

    sequence: tuple[Row, ...]
    degree_bound: int
    offset_bound: int
    offsets: dict[tuple[int, int], Optional[int]] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if all(j is not None for j in self.offsets.values()) else UNDETERMINED

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "sequence": [list(x) for x in self.sequence],
            "degree_bound": self.degree_bound,
            "offset_bound": self.offset_bound,
            "verdict": self.verdict,
            "offsets": [{"p": p, "i": i, "j": j} for (p, i), j in sorted(self.offsets.items())],
        }


def weak_proregularity_check(R: FiniteRing, r: Sequence[Sequence[int]], degree_bound: int = 4,
                             offset_bound: int = DEFAULT_OFFSET_BOUND) -> ProZeroVerdict:
    """Search, for each p < 0 and i <= degree_bound, an offset killing H^p(K(r^j)) -> H^p(K(r^i))."""
    r = tuple(R.normalize(x) for x in r)
    t = len(r)
    out = ProZeroVerdict(r, degree_bound, offset_bound)
    complexes = {k: koszul_complex(R, _powers(R, r, k)) for k in range(1, degree_bound + offset_bound + 1)}
    for p in range(-t, 0):
        for i in range(1, degree_bound + 1):
            B = complexes[i].boundaries(p)
            found = None
            for j in range(i + 1, i + offset_bound + 1):
                phi = koszul_tower_map(R, r, i, j, p)
                Z = complexes[j].cycles(p)
                img = [vecmat(v, phi.matrix, R.n, phi.target.ncoords) for v in Z.basis.rows]
                if B.basis.contains_all(img):
                    found = j
                    break
            out.offsets[(p, i)] = found
    return out


def check_idempotent_weakly_proregular(I: Ideal, degree_bound: int = 4,
                                       offset_bound: int = DEFAULT_OFFSET_BOUND) -> Report:
    """An idempotent ideal, generated by an idempotent element, is weakly proregular."""
    if not is_idempotent(I):
        raise RingError("ideal is not idempotent")
    R = I.ring
    e = generated_by_idempotent_element(I)
    seq = [e] if e is not None else [g for g in I.group_generators() if any(g)]
    rep = Report("idempotent_weakly_proregular", "an idempotent ideal is weakly proregular")
    v = weak_proregularity_check(R, seq, degree_bound, offset_bound)
    rep.details["pro_zero"] = v.to_dict()
    if v.verdict != "pass":
        rep.verdict = UNDETERMINED
    return rep


# ---------------------------------------------------------------------------
# degeneration checks

def check_spectral_vnr(I: Ideal, M: FinModule, qmax: int = 3, length: int = DEFAULT_RESOLUTION_LENGTH) -> Report:
    """Over a finite product of fields: higher local (co)homology vanishes and the
    degree-zero composites recover Gamma_I(M) and Lambda_I(M)."""
    R = I.ring
    if not R.is_product_of_fields():
        raise RingError("ring is not a product of fields")
    rep = Report("spectral_vnr", "higher local (co)homology vanishes; (0,0) composites give Gamma_I(M) "
                                 "and Lambda_I(M)")
    s = chain_profile(M, I)
    G = gamma(M, I)
    IsM = s.power_multiple(s.desc_stab_index)
    for q in range(1, qmax + 1):
        if not local_cohomology(q, I, M, length).is_zero():
            rep.fail("higher local cohomology is nonzero", degree=q, module=M)
        if not local_homology(q, I, M, length).is_zero():
            rep.fail("higher local homology is nonzero", degree=q, module=M)

    H, ev = local_cohomology_zero(I, M)
    L, pi = local_homology_zero(I, M)
    if not ev.is_injective() or ev.image() != G:
        rep.fail("H^0 differs from Gamma", module=M)
    if not pi.is_surjective() or pi.kernel() != IsM:
        rep.fail("H_0 differs from Lambda", module=M)
    # H^0(H^0), H_0(H_0), H_0(H^0), H^0(H_0)
    HH, ev2 = local_cohomology_zero(I, H)
    if ev.compose(ev2).image() != G or not ev2.is_injective():
        rep.fail("H^0(H^0(M)) differs from Gamma", module=M)
    LL, pi2 = local_homology_zero(I, L)
    if pi2.compose(pi).kernel() != IsM or not pi2.is_surjective():
        rep.fail("H_0(H_0(M)) differs from Lambda", module=M)
    LH, piH = local_homology_zero(I, H)
    if not (piH.is_injective() and piH.is_surjective()):
        rep.fail("H_0(H^0(M)) differs from Gamma", module=M)
    HL, evL = local_cohomology_zero(I, L)
    if not (evL.is_injective() and evL.is_surjective()):
        rep.fail("H^0(H_0(M)) differs from Lambda", module=M)

    for p in range(qmax + 1):
        for q in range(qmax + 1):
            if p == q == 0:
                continue
            Hq = local_cohomology(q, I, M, length) if q else H
            Lq = local_homology(q, I, M, length) if q else L
            if not local_homology(p, I, Hq, length).is_zero():
                rep.fail("mixed composite H_p(H^q) is nonzero", p=p, q=q, module=M)
            if not local_cohomology(p, I, Lq, length).is_zero():
                rep.fail("mixed composite H^p(H_q) is nonzero", p=p, q=q, module=M)
            if not local_cohomology(p, I, Hq, length).is_zero():
                rep.fail("composite H^p(H^q) is nonzero", p=p, q=q, module=M)
            if not local_homology(p, I, Lq, length).is_zero():
                rep.fail("composite H_p(H_q) is nonzero", p=p, q=q, module=M)
    rep.details.update(gamma_order=G.cardinality, lambda_order=M.cardinality // IsM.cardinality)
    return rep.validate()


def check_local_cohomology_hom(I: Ideal, M: FinModule, qmax: int = 2,
                               length: int = DEFAULT_RESOLUTION_LENGTH) -> Report:
    """Hom(R/I, H^q_I(M)) = H^q_I(M) for I-reduced M; R/I (x) H_q^I(M) = H_q^I(M) for I-coreduced M."""
    from .torsion import is_coreduced, is_reduced

    R = I.ring
    rep = Report("local_cohomology_hom",
                 "Hom(R/I, H^q_I(M)) = H^q_I(M) for I-reduced M and R/I (x) H_q^I(M) = H_q^I(M) "
                 "for I-coreduced M")
    red, cored = is_reduced(M, I), is_coreduced(M, I)
    rep.details.update(reduced=red, coreduced=cored)
    if not red and not cored:
        rep.verdict = UNDETERMINED
        rep.details["precondition"] = "module is neither I-reduced nor I-coreduced"
        return rep
    RI = cyclic_module(I)
    checked = []
    for q in range(qmax + 1):
        try:
            H = local_cohomology(q, I, M, length) if red else None
            L = local_homology(q, I, M, length) if cored else None
        except NotComputed:
            rep.verdict = UNDETERMINED
            rep.details["not_computed_from"] = q
            break
        if H is not None:
            Hom, emb = hom_module(RI, H)
            ev = emb.evaluation(RI.canonical(R.unit))
            if not (ev.is_injective() and ev.is_surjective()):
                rep.fail("evaluation Hom(R/I, H^q) -> H^q is not bijective", degree=q,
                         residue=annihilator_submodule(H, I))
        if L is not None:
            IL = ideal_scale(L, I)
            if not IL.is_zero():
                rep.fail("R/I (x) H_q -> H_q is not bijective (I H_q != 0)", degree=q, residue=IL)
        checked.append(q)
    rep.stats["degrees"] = checked
    return rep.validate() if rep.verdict != UNDETERMINED or not rep.witnesses else rep

