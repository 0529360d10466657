"""Exhaustive and sampled families of finite modules over a fixed ring."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .modules import (
    FinModule,
    ModuleMap,
    cyclic_module,
    direct_sum,
    enumerate_submodules,
    free_module,
    hom_module,
    is_indecomposable,
    is_isomorphic,
    module_invariants,
    module_signature,
    quotient_module,
    submodule_as_module,
    zero_module,
)
from .rings import FiniteRing, Ideal


def cyclic_modules(R: FiniteRing) -> list[FinModule]:
    """R/J for every proper ideal J, largest first."""
    return [cyclic_module(J) for J in R.ideals if not J.is_unit_ideal()]


def module_family(R: FiniteRing, max_order: int, max_summands: Optional[int] = None,
                  dedupe: bool = True, extra: Sequence[FinModule] = ()) -> list[FinModule]:
    """Every module of order <= max_order, up to isomorphism.

    Over a principal ideal ring every finite module is a direct sum of cyclic
    modules R/J, so the family is all such sums (at most ``max_summands``
    summands when given).  Other rings use quotients of R^k for
    k <= max_summands (default 2), together with ``extra``, closed under
    direct sums.  That is complete only when every indecomposable of order
    <= max_order is k-generated or listed in ``extra``.
    """
    if R.is_principal_ideal_ring():
        mods = _cyclic_sums(R, max_order, max_summands)
        if dedupe:
            seen: dict[tuple, FinModule] = {}
            for M in mods:
                seen.setdefault(module_signature(M), M)
            mods = list(seen.values())
    else:
        mods = _free_quotients(R, max_order, 2 if max_summands is None else max_summands)
        mods = _sums_of_indecomposables(R, _distinct(mods + list(extra)), max_order, max_summands) \
            if dedupe else mods + list(extra)
    return sorted(mods, key=lambda M: (M.cardinality, M.ncoords, M.label))


def _cyclic_sums(R: FiniteRing, max_order: int, max_summands: Optional[int]) -> list[FinModule]:
    cyc = [C for C in cyclic_modules(R) if C.cardinality > 1]
    out = [zero_module(R)]

    def rec(start: int, chosen: list[FinModule], order: int) -> None:
        for i in range(start, len(cyc)):
            C = cyc[i]
            o = order * C.cardinality
            if o > max_order:
                continue
            if max_summands is not None and len(chosen) + 1 > max_summands:
                continue
            nxt = chosen + [C]
            out.append(direct_sum(*nxt, label=" + ".join(X.label for X in nxt)))
            rec(i, nxt, o)

    rec(0, [], 1)
    return out


def _free_quotients(R: FiniteRing, max_order: int, max_gens: int) -> list[FinModule]:
    out = [zero_module(R)]
    for k in range(1, max_gens + 1):
        F = free_module(R, k)
        for N in enumerate_submodules(F, bound=max(F.cardinality, 256)):
            if F.cardinality // N.cardinality <= max_order and not N.is_full():
                out.append(quotient_module(F, N, f"R^{k}/N{len(out)}")[0])
    return out


def _distinct(mods: list[FinModule]) -> list[FinModule]:
    """Drop a module only when an isomorphism to an earlier one is found."""
    out: list[FinModule] = []
    buckets: dict[tuple, list[FinModule]] = {}
    for M in mods:
        key = (M.cardinality,) + module_invariants(M)
        bucket = buckets.setdefault(key, [])
        if any(is_isomorphic(M, N) for N in bucket):
            continue
        bucket.append(M)
        out.append(M)
    return out


def _sums_of_indecomposables(R: FiniteRing, mods: list[FinModule], max_order: int,
                             max_summands: Optional[int]) -> list[FinModule]:
    """Direct sums over multisets of the indecomposables among ``mods``.

    Krull-Schmidt holds for finite modules, so distinct multisets give
    non-isomorphic sums and no further isomorphism tests are needed.
    """
    ind = [M for M in mods if is_indecomposable(M) is not False]
    out = [zero_module(R)]

    def rec(start: int, chosen: list[FinModule], order: int) -> None:
        for i in range(start, len(ind)):
            o = order * ind[i].cardinality
            if o > max_order or (max_summands is not None and len(chosen) >= max_summands):
                continue
            nxt = chosen + [ind[i]]
            out.append(nxt[0] if len(nxt) == 1 else direct_sum(*nxt, label=" + ".join(X.label for X in nxt)))
            rec(i, nxt, o)

    rec(0, [], 1)
    return out


def all_maps(M: FinModule, N: FinModule) -> Iterator[ModuleMap]:
    H, emb = hom_module(M, N)
    for y in H.elements():
        yield emb.to_map(y)


def sample_maps(M: FinModule, N: FinModule, count: int, rng: random.Random) -> list[ModuleMap]:
    H, emb = hom_module(M, N)
    elems = list(H.elements())
    if len(elems) <= count:
        return [emb.to_map(y) for y in elems]
    return [emb.to_map(y) for y in rng.sample(elems, count)]


CLOSURES = ("submodule", "quotient", "direct_sum", "extension")


@dataclass
class ModuleFamily:
    """A finite list of modules standing in for a full subcategory."""

    ring: FiniteRing
    ideal: Ideal
    modules: list[FinModule]
    maps: list[ModuleMap] = field(default_factory=list)
    closure_flags: tuple[str, ...] = ()
    seed: int = 0

    def __post_init__(self):
        for M in self.modules:
            if M.ring is not self.ring:
                raise ValueError("family member over a different ring")
        unknown = set(self.closure_flags) - set(CLOSURES)
        if unknown:
            raise ValueError(f"unknown closure flags {sorted(unknown)}")
        if self.closure_flags and self.ring.is_principal_ideal_ring():
            self._spot_check()

    def __iter__(self):
        return iter(self.modules)

    def __len__(self) -> int:
        return len(self.modules)

    def signatures(self) -> set[tuple]:
        return {module_signature(M) for M in self.modules}

    def contains_iso(self, M: FinModule) -> bool:
        return module_signature(M) in self.signatures()

    def _spot_check(self, samples: int = 4) -> None:
        rng = random.Random(self.seed)
        sigs = self.signatures()
        small = [M for M in self.modules if M.cardinality <= 64]
        for M in rng.sample(small, min(samples, len(small))):
            subs = enumerate_submodules(M)
            N = rng.choice(subs)
            if "submodule" in self.closure_flags:
                if module_signature(submodule_as_module(N)[0]) not in sigs:
                    raise ValueError(f"family is not closed under submodules at {M!r}")
            if "quotient" in self.closure_flags:
                if module_signature(quotient_module(M, N)[0]) not in sigs:
                    raise ValueError(f"family is not closed under quotients at {M!r}")

    @classmethod
    def exhaustive(cls, R: FiniteRing, I: Ideal, max_order: int, max_summands: Optional[int] = None,
                   with_maps: bool = False, seed: int = 0) -> "ModuleFamily":
        mods = module_family(R, max_order, max_summands)
        maps = [f for M in mods for N in mods for f in all_maps(M, N)] if with_maps else []
        return cls(R, I, mods, maps, (), seed)

    @classmethod
    def sampled(cls, R: FiniteRing, I: Ideal, modules: Sequence[FinModule], maps_per_pair: int,
                seed: int = 0) -> "ModuleFamily":
        rng = random.Random(seed)
        maps = [f for M in modules for N in modules for f in sample_maps(M, N, maps_per_pair, rng)]
        return cls(R, I, list(modules), maps, (), seed)

    def where(self, predicate) -> "ModuleFamily":
        return ModuleFamily(self.ring, self.ideal, [M for M in self.modules if predicate(M)],
                            [f for f in self.maps if predicate(f.source) and predicate(f.target)],
                            (), self.seed)
