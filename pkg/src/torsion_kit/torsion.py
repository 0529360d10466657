"""Torsion functors Gamma_I, big Gamma_I, Lambda_I and the (co)reducedness predicates.

Everything is computed by walking the chains (0 :_M I^k) and I^k M until two
consecutive terms agree; finite modules always stabilize.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .linalg import preimage
from .modules import (
    FinModule,
    ModuleMap,
    Submodule,
    annihilator_submodule,
    ideal_scale,
    quotient_module,
)
from .rings import Ideal, ideal_generate, ideal_product


@dataclass(frozen=True)
class ChainProfile:
    """The chains (0:_M I^k) and I^k M for k = 1 .. stabilization + 1."""

    ideal: Ideal
    module: FinModule
    ascending: tuple[Submodule, ...]
    descending: tuple[Submodule, ...]
    asc_stab_index: int
    desc_stab_index: int

    def annihilator(self, k: int) -> Submodule:
        """(0 :_M I^k) for any k >= 1 (constant past the stabilization index)."""
        return self.ascending[min(k, len(self.ascending)) - 1]

    def power_multiple(self, k: int) -> Submodule:
        """I^k M for any k >= 1."""
        return self.descending[min(k, len(self.descending)) - 1]


def colon(M: FinModule, J: Ideal, N: Submodule) -> Submodule:
    """(N :_M J) = {m : J m is contained in N}."""
    out = M.full()
    for g in J.group_generators():
        out = out & Submodule(M, preimage(M.action_matrix(g), N.basis, nrows=M.ncoords))
    return out


def chain_profile(M: FinModule, I: Ideal) -> ChainProfile:
    return _profile(M, I)


@lru_cache(maxsize=4096)
def _profile(M: FinModule, I: Ideal) -> ChainProfile:
    cap = M.cardinality + 1
    asc = [annihilator_submodule(M, I)]
    power = I
    while True:
        power = ideal_product(power, I)
        nxt = annihilator_submodule(M, power)
        asc.append(nxt)
        if nxt == asc[-2]:
            break
        if len(asc) > cap:  # pragma: no cover - finite modules cannot get here
            raise AssertionError("annihilator chain failed to stabilize")
    desc = [ideal_scale(M, I)]
    while True:
        nxt = ideal_scale(M, I, desc[-1])
        desc.append(nxt)
        if nxt == desc[-2]:
            break
        if len(desc) > cap:  # pragma: no cover
            raise AssertionError("power chain failed to stabilize")
    return ChainProfile(I, M, tuple(asc), tuple(desc), len(asc) - 1, len(desc) - 1)


def gamma(M: FinModule, I: Ideal) -> Submodule:
    """Gamma_I(M): the union of the annihilators (0:_M I^k)."""
    p = chain_profile(M, I)
    return p.annihilator(p.asc_stab_index)


def gamma_bar(M: FinModule, I: Ideal) -> Submodule:
    """{m : every element of I is nilpotent on m}, the big I-torsion submodule."""
    out = M.full()
    for g in I.group_generators():
        out = out & gamma(M, ideal_generate(I.ring, [g]))
    return out


def lambda_(M: FinModule, I: Ideal) -> tuple[FinModule, ModuleMap]:
    """Lambda_I(M) = M / I^s M at the stabilization index s, with the projection."""
    p = chain_profile(M, I)
    return quotient_module(M, p.power_multiple(p.desc_stab_index), f"Lambda({M.label})")


def reduction_index(M: FinModule, I: Ideal) -> int:
    return chain_profile(M, I).asc_stab_index


def coreduction_index(M: FinModule, I: Ideal) -> int:
    return chain_profile(M, I).desc_stab_index


def is_reduced(M: FinModule, I: Ideal) -> bool:
    p = chain_profile(M, I)
    return p.annihilator(1) == p.annihilator(2)


def is_coreduced(M: FinModule, I: Ideal) -> bool:
    p = chain_profile(M, I)
    return p.power_multiple(1) == p.power_multiple(2)


def is_k_reduced(M: FinModule, I: Ideal, k: int) -> bool:
    return chain_profile(M, I).asc_stab_index <= k


def is_k_coreduced(M: FinModule, I: Ideal, k: int) -> bool:
    return chain_profile(M, I).desc_stab_index <= k


def is_torsion(M: FinModule, I: Ideal) -> bool:
    return gamma(M, I).is_full()


def is_complete(M: FinModule, I: Ideal) -> bool:
    p = chain_profile(M, I)
    return p.power_multiple(p.desc_stab_index).is_zero()


def locally_nilradical(M: FinModule, a: Sequence[int]) -> Submodule:
    """a . Gamma_(a)(M)."""
    A = ideal_generate(M.ring, [a])
    return ideal_scale(M, A, gamma(M, A))
