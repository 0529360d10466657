"""Machine checks of the radical / torsion-theory statements on explicit finite families.

Each ``check_*`` function evaluates a statement on concrete modules and returns
a :class:`Report`.  Equivalence statements ("the following are equivalent")
pass when every listed condition evaluates to the same boolean; the booleans
themselves are kept in ``details["conditions"]``.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence, Union

from .families import ModuleFamily
from .linalg import solve
from .modules import (
    FinModule,
    ModuleMap,
    Submodule,
    annihilator_submodule,
    direct_sum,
    enumerate_submodules,
    hom_module,
    ideal_scale,
    quotient_module,
    submodule_as_module,
    summand_maps,
)
from .report import UNDETERMINED, Report
from .rings import FiniteRing, Ideal, RingError, ideal_power, is_idempotent
from .torsion import (
    gamma,
    gamma_bar,
    is_complete,
    is_coreduced,
    is_k_coreduced,
    is_k_reduced,
    is_reduced,
    is_torsion,
)

Family = Union[ModuleFamily, Sequence[FinModule]]


def _members(family: Family) -> list[FinModule]:
    return list(family.modules if isinstance(family, ModuleFamily) else family)


def _unanimity(report: Report, conditions: dict[str, bool]) -> Report:
    report.details["conditions"] = conditions
    values = set(conditions.values())
    report.details["common_value"] = values.pop() if len(values) == 1 else None
    if len(set(conditions.values())) > 1:
        report.fail("conditions disagree", conditions=conditions)
    return report.validate()


# ---------------------------------------------------------------------------

def check_preradical(family: ModuleFamily) -> Report:
    """Every map sends (0:_M I) into (0:_N I)."""
    I = family.ideal
    rep = Report("preradical", "f((0:_M I)) is contained in (0:_N I) for every map f: M -> N")
    for f in family.maps:
        src = annihilator_submodule(f.source, I)
        img = f.image(src)
        if not img <= annihilator_submodule(f.target, I):
            rep.fail("image escapes the annihilator", source=f.source, target=f.target,
                     matrix=[list(r) for r in f.matrix])
    rep.stats["maps"] = len(family.maps)
    return rep.validate()


def check_hom_radical(M: FinModule, I: Ideal) -> Report:
    """(0 :_{M/(0:_M I)} I) = 0, i.e. Hom(R/I, -) kills M/Hom(R/I, M)."""
    rep = Report("hom_radical", "(0 : I) of M/(0:_M I) vanishes")
    A = annihilator_submodule(M, I)
    Q, _ = quotient_module(M, A)
    top = annihilator_submodule(Q, I)
    rep.stats["order"] = M.cardinality
    rep.details["quotient_annihilator_order"] = top.cardinality
    if not top.is_zero():
        m = next(g for g in top.generators())
        rep.fail("nonzero coset killed by I", module=M, coset_representative=list(m),
                 ideal=I)
    rep.details["is_reduced"] = is_reduced(M, I)
    if rep.details["is_reduced"] != rep.passed:  # pragma: no cover - would be a defect
        raise AssertionError("hom_radical verdict disagrees with is_reduced")
    return rep.validate()


def check_explicit_iso(f: ModuleMap, name: str = "explicit_iso") -> Report:
    rep = Report(name, "the given map is an isomorphism")
    K = f.kernel()
    inj, surj = K.is_zero(), f.is_surjective()
    rep.details.update(injective=inj, surjective=surj, bijective=inj and surj, kernel=K)
    if not inj:
        rep.fail("nonzero kernel", kernel=K)
    if not surj:
        rep.fail("not surjective", image=f.image())
    return rep.validate()


def annihilator_layer_map(M: FinModule, I: Ideal, k: int) -> tuple[ModuleMap, ModuleMap, Submodule, Submodule]:
    """m -> m + (0:I^k) from (0:I^(k+1)) to M/(0:I^k).

    Returns the map, the inclusion of (0:I^(k+1)) into M, the target
    submodule (0 :_{M/(0:I^k)} I) and (0:I^k).
    """
    low = annihilator_submodule(M, ideal_power(I, k))
    high = annihilator_submodule(M, ideal_power(I, k + 1))
    Q, proj = quotient_module(M, low)
    _, incl = submodule_as_module(high)
    return proj.compose(incl), incl, annihilator_submodule(Q, I), low


def check_annihilator_layers(M: FinModule, I: Ideal, k: int) -> Report:
    """(0:I^(k+1)) maps onto (0 :_{M/(0:I^k)} I) with kernel (0:I^k)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    rep = Report("annihilator_layers",
                 f"m -> m + (0:I^{k}) maps (0:I^{k + 1}) onto (0 : I) of M/(0:I^{k}) with kernel (0:I^{k})")
    f, incl, target, low = annihilator_layer_map(M, I, k)
    img = f.image()
    ker = incl.image(f.kernel())
    rep.details.update(image_order=img.cardinality, target_order=target.cardinality,
                       kernel_order=ker.cardinality, low_order=low.cardinality)
    if img != target:
        rep.fail("image differs from the quotient annihilator", image=img, target=target)
    if ker != low:
        rep.fail("kernel differs from (0:I^k)", kernel=ker, expected=low)
    return rep.validate()


# ---------------------------------------------------------------------------
# torsion theories

def check_ttf(family: Family, I: Ideal, coreduced_family: Optional[Family] = None,
              power: int = 1, bound: int = 256) -> Report:
    """T = {M : J M = 0} (J = I^power) is a TTF class within the family."""
    J = ideal_power(I, power)
    mods = _members(family)
    cmods = _members(coreduced_family) if coreduced_family is not None else mods
    rep = Report("ttf", "T = {M : I M = 0} is closed under submodules, quotients, sums and "
                        "extensions, and Hom(T, F) = 0")
    T = [M for M in mods if ideal_scale(M, J).is_zero()]
    F = [M for M in mods if gamma(M, I).is_zero()]
    big_T = [M for M in cmods if ideal_scale(M, J).is_full()]
    rep.stats.update(members=len(mods), torsion=len(T), torsion_free=len(F), divisible=len(big_T))
    for A in T:
        for B in F:
            if hom_module(A, B)[0].cardinality != 1:
                rep.fail("nonzero map from T to F", source=A, target=B)
    for A in big_T:
        for B in T:
            if hom_module(A, B)[0].cardinality != 1:
                rep.fail("nonzero map from {IM = M} to T", source=A, target=B)
    closures = {"submodule": True, "quotient": True, "direct_sum": True, "extension": True}
    for M in mods:
        subs = enumerate_submodules(M, bound=bound)
        JM = ideal_scale(M, J)
        in_T = JM.is_zero()
        for N in subs:
            N_in_T = ideal_scale(M, J, N).is_zero()
            quotient_in_T = JM <= N
            if in_T and not N_in_T:
                closures["submodule"] = False
                rep.fail("submodule of a T-module leaves T", module=M, submodule=N)
            if in_T and not quotient_in_T:
                closures["quotient"] = False
                rep.fail("quotient of a T-module leaves T", module=M, submodule=N)
            if N_in_T and quotient_in_T and not in_T:
                closures["extension"] = False
                rep.fail("extension of T-modules leaves T", module=M, submodule=N)
    for i, A in enumerate(T):
        for B in T[i:]:
            if not ideal_scale(S := direct_sum(A, B), J).is_zero():
                closures["direct_sum"] = False
                rep.fail("direct sum leaves T", module=S)
    rep.details["closures"] = closures
    return rep.validate()


def check_radical_equivalence(A: Family, I: Ideal, B: Optional[Family] = None) -> Report:
    """The five conditions equivalent to Hom(R/I, -) being a radical, evaluated independently."""
    mods = _members(A)
    bmods = _members(B) if B is not None else mods
    rep = Report("radical_equivalence",
                 "Hom(R/I,-) radical <=> all I-reduced <=> T_I is TTF <=> all I-coreduced "
                 "<=> M -> IM idempotent")
    c1 = [M for M in mods if not check_hom_radical(M, I).passed]
    c2 = [M for M in mods if not is_reduced(M, I)]
    ttf = check_ttf(mods, I, bmods)
    c4 = [M for M in bmods if not is_coreduced(M, I)]
    c5 = [M for M in bmods if ideal_scale(M, I, ideal_scale(M, I)) != ideal_scale(M, I)]
    conditions = {
        "hom_is_radical": not c1,
        "all_reduced": not c2,
        "torsion_class_is_ttf": ttf.passed,
        "all_coreduced": not c4,
        "ideal_multiple_idempotent": not c5,
    }
    _witness_common(rep, [c1, c2, c4, c5])
    rep.stats.update(members=len(mods), coreduced_members=len(bmods))
    rep.details["ideal_is_idempotent"] = is_idempotent(I)
    return _unanimity(rep, conditions)


def check_torsion_radical_equivalence(C: Family, I: Ideal, k: int, D: Optional[Family] = None) -> Report:
    """The five conditions for Gamma_I to be a radical realized at stage k (J = I^k)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    mods = _members(C)
    dmods = _members(D) if D is not None else mods
    J = ideal_power(I, k)
    rep = Report("torsion_radical_equivalence",
                 f"Gamma_I radical with Gamma_I = (0:I^{k}) <=> all I^{k}-reduced <=> "
                 f"{{M : I^{k}M = 0}} is TTF <=> all I^{k}-coreduced <=> M -> I^{k}M idempotent")
    c1 = []
    for M in mods:
        G = gamma(M, I)
        Q, proj = quotient_module(M, G)
        if not gamma(Q, I).is_zero() or G != annihilator_submodule(M, J):
            c1.append(M)
    c2 = [M for M in mods if not is_k_reduced(M, I, k)]
    ttf = check_ttf(mods, I, dmods, power=k)
    c4 = [M for M in dmods if not is_k_coreduced(M, I, k)]
    c5 = [M for M in dmods if ideal_scale(M, J, ideal_scale(M, J)) != ideal_scale(M, J)]
    conditions = {
        "gamma_is_radical_at_k": not c1,
        "all_k_reduced": not c2,
        "torsion_class_is_ttf": ttf.passed,
        "all_k_coreduced": not c4,
        "power_multiple_idempotent": not c5,
    }
    _witness_common(rep, [c1, c2, c4, c5])
    rep.stats.update(members=len(mods), k=k)
    return _unanimity(rep, conditions)


def _witness_common(rep: Report, failing: list[list[FinModule]]) -> None:
    """Record a module that breaks every per-module condition, if there is one."""
    if not all(failing):
        return
    ids = [set(map(id, f)) for f in failing]
    common = set.intersection(*ids)
    for M in failing[0]:
        if id(M) in common:
            rep.note("breaks every per-module condition", module=M)
            rep.details["common_witness"] = M.label
            return


def gabriel_topology(R: FiniteRing, I: Ideal,
                     family: Optional[Union[ModuleFamily, Callable[[FinModule], bool]]] = None) -> list[Ideal]:
    """{J ideal : I <= J and R/J in the family}; the family defaults to the I-reduced modules."""
    from .modules import cyclic_module

    admits = _admits(family, I)
    return [J for J in R.ideals if I <= J and admits(cyclic_module(J))]


def _admits(family, I: Ideal) -> Callable[[FinModule], bool]:
    if family is None:
        return lambda M: is_reduced(M, I)
    if isinstance(family, ModuleFamily):
        return family.contains_iso
    return family


def check_gabriel_topology(R: FiniteRing, I: Ideal, family=None) -> Report:
    """The topology contains only ideals over I and is upward closed inside the family."""
    from .modules import cyclic_module

    admits = _admits(family, I)
    G = gabriel_topology(R, I, family)
    rep = Report("gabriel", "{J >= I : R/J in the family} is upward closed")
    members = {J.basis for J in G}
    for J in G:
        if not I <= J:
            rep.fail("ideal does not contain I", ideal=J)
        for J2 in R.ideals:
            if J <= J2 and J2.basis not in members and admits(cyclic_module(J2)):
                rep.fail("not upward closed", ideal=J, larger=J2)
    rep.details["topology"] = [[list(g) for g in J.group_generators()] for J in G]
    rep.stats["size"] = len(G)
    return rep.validate()


def check_splitting(M: FinModule, I: Ideal, bound: int = 256) -> Report:
    """An I-reduced M is Gamma_I(M) + F with Gamma_I(F) = 0, and then I F = F."""
    rep = Report("splitting", "M = Gamma_I(M) (+) F with Gamma_I(F) = 0 and I F = F")
    if not is_reduced(M, I):
        rep.verdict = UNDETERMINED
        rep.details["precondition"] = "module is not I-reduced"
        return rep
    G = gamma(M, I)
    found = None
    for F in enumerate_submodules(M, bound=bound):
        if (G & F).is_zero() and (G + F).is_full():
            Fm, _ = submodule_as_module(F)
            if gamma(Fm, I).is_zero():
                found = F
                break
    if found is None:
        rep.fail("no torsion-free complement", module=M, torsion=G)
        return rep.validate()
    rep.details["complement"] = found
    rep.details["torsion"] = G
    if ideal_scale(M, I, found) != found:
        rep.fail("complement is not I-divisible", complement=found)
    return rep.validate()


def check_annihilated_equivalence(M: FinModule, I: Ideal) -> Report:
    """IM = 0 <=> (0:I) = M <=> torsion and reduced <=> complete and coreduced <=> M -> M/IM bijective."""
    rep = Report("annihilated_equivalence",
                 "IM = 0 <=> (0:_M I) = M <=> torsion & reduced <=> complete & coreduced "
                 "<=> M -> M/IM is bijective")
    IM = ideal_scale(M, I)
    Q, proj = quotient_module(M, IM)
    conditions = {
        "IM_zero": IM.is_zero(),
        "annihilator_full": annihilator_submodule(M, I).is_full(),
        "torsion_and_reduced": is_torsion(M, I) and is_reduced(M, I),
        "complete_and_coreduced": is_complete(M, I) and is_coreduced(M, I),
        "projection_bijective": proj.is_injective() and proj.is_surjective(),
    }
    rep.stats["order"] = M.cardinality
    return _unanimity(rep, conditions)


# ---------------------------------------------------------------------------
# radical class of rings annihilated by an idempotent ideal

def psi_radical(S: FinModule, I: Ideal, bound: int = 256) -> Submodule:
    """Sum of all ideals J of the quotient ring S = R/K with I J = 0.

    ``S`` must be a cyclic quotient of the regular module (as built by
    ``cyclic_module``), so its ring ideals are exactly its R-submodules.
    """
    if not is_idempotent(I):
        raise RingError("the radical class needs an idempotent ideal")
    out = S.zero_submodule()
    for J in enumerate_submodules(S, bound=bound):
        if ideal_scale(S, I, J).is_zero():
            out = out + J
    return out


def check_radical_class(I: Ideal, quotients: Optional[Sequence[Ideal]] = None, bound: int = 256) -> Report:
    """Radical-class axioms for rings annihilated by I, on the quotient rings R/K."""
    from .modules import cyclic_module

    if not is_idempotent(I):
        raise RingError("the radical class needs an idempotent ideal")
    R = I.ring
    Ks = list(quotients) if quotients is not None else [K for K in R.ideals if not K.is_unit_ideal()]
    rep = Report("radical_class", "rings S with IS = 0 form a radical class and Psi_I(S) = Gamma_I(S)")
    for K in Ks:
        S = cyclic_module(K)
        P = psi_radical(S, I, bound)
        if P != gamma(S, I):
            rep.fail("Psi differs from Gamma", ring=S, psi=P, gamma=gamma(S, I))
        if P != annihilator_submodule(S, I):
            rep.fail("Psi differs from (0:I)", ring=S, psi=P)
        if not ideal_scale(S, I, P).is_zero():
            rep.fail("the radical is not in the class", ring=S, psi=P)
        SQ, _ = quotient_module(S, P)
        if not psi_radical(SQ, I, bound).is_zero():
            rep.fail("radical of the quotient is nonzero", ring=S, psi=P)
        if ideal_scale(S, I).is_zero():
            for J in enumerate_submodules(S, bound=bound):
                Q, _ = quotient_module(S, J)
                if not ideal_scale(Q, I).is_zero():
                    rep.fail("homomorphic image leaves the class", ring=S, ideal=J)
    rep.stats["rings"] = len(Ks)
    return rep.validate()


# ---------------------------------------------------------------------------
# limits

def inverse_limit(modules: Sequence[FinModule], maps: Sequence[ModuleMap]) -> tuple[FinModule, Submodule]:
    """Compatible tuples of a finite tower M_0 -> M_1 -> ... (or a discrete product).

    Returns the ambient direct sum and the limit as a submodule of it.
    """
    if maps and len(maps) != len(modules) - 1:
        raise ValueError("a tower of k modules needs k-1 maps")
    for i, f in enumerate(maps):
        if f.source is not modules[i] or f.target is not modules[i + 1]:
            raise ValueError(f"map {i} is not composable with the tower")
    total = direct_sum(*modules)
    if not maps:
        return total, total.full()
    inj, proj = summand_maps(modules, total)
    tail = direct_sum(*modules[1:])
    tinj, _ = summand_maps(modules[1:], tail)
    n, c, ct = total.n, total.ncoords, tail.ncoords
    rows = []
    for e in range(c):
        v = [0] * c
        v[e] = 1
        out = [0] * ct
        for i, f in enumerate(maps):
            a = tinj[i](f(proj[i](v)))
            b = tinj[i](proj[i + 1](v))
            out = [(x + y - z) % n for x, y, z in zip(out, a, b)]
        rows.append(tuple(out))
    delta = ModuleMap(total, tail, tuple(rows))
    return total, delta.kernel()


def check_limits_commute(I: Ideal, modules: Sequence[FinModule], maps: Sequence[ModuleMap] = ()) -> Report:
    """Gamma_I of the limit equals the limit of the Gamma_I's."""
    rep = Report("limits_commute", "Gamma_I(lim M_i) = lim Gamma_I(M_i)")
    rep.details["members_reduced"] = [is_reduced(M, I) for M in modules]
    total, L = inverse_limit(modules, maps)
    Lm, incl = submodule_as_module(L)
    lhs = incl.image(gamma(Lm, I))
    gammas = []
    gincl = []
    for M in modules:
        Gm, gi = submodule_as_module(gamma(M, I))
        gammas.append(Gm)
        gincl.append(gi)
    gmaps = []
    for i, f in enumerate(maps):
        # f restricted to the torsion parts; f(Gamma(M_i)) lies in Gamma(M_(i+1))
        T = modules[i + 1]
        lift = gincl[i + 1].matrix + T.relations.rows
        rows = []
        for r in f.compose(gincl[i]).matrix:
            y = solve(lift, r, T.n)
            if y is None:
                rep.fail("map does not preserve Gamma", index=i)
                return rep.validate()
            rows.append(y[:gammas[i + 1].ncoords])
        gmaps.append(ModuleMap(gammas[i], gammas[i + 1], tuple(rows)))
    gtotal, GL = inverse_limit(gammas, gmaps)
    _, gproj = summand_maps(gammas, gtotal)
    inj, _ = summand_maps(modules, total)
    emb_rows = []
    for e in range(gtotal.ncoords):
        v = [0] * gtotal.ncoords
        v[e] = 1
        out = [0] * total.ncoords
        for i in range(len(modules)):
            w = inj[i](gincl[i](gproj[i](v)))
            out = [(x + y) % total.n for x, y in zip(out, w)]
        emb_rows.append(tuple(out))
    rhs = ModuleMap(gtotal, total, tuple(emb_rows)).image(GL)
    rep.details.update(limit_order=L.cardinality, lhs_order=lhs.cardinality, rhs_order=rhs.cardinality)
    if lhs != rhs:
        rep.fail("Gamma does not commute with the limit", lhs=lhs, rhs=rhs)
    return rep.validate()


def check_big_torsion(M: FinModule, I: Ideal) -> Report:
    """Gamma_I(M) <= big Gamma_I(M), with equality when M is I-reduced."""
    rep = Report("big_torsion", "Gamma_I(M) <= big Gamma_I(M), equal for I-reduced M")
    G, B = gamma(M, I), gamma_bar(M, I)
    red = is_reduced(M, I)
    rep.details.update(gamma_order=G.cardinality, big_order=B.cardinality, reduced=red)
    if not G <= B:
        rep.fail("Gamma is not contained in big Gamma", module=M)
    if red and G != B:
        rep.fail("reduced module with Gamma != big Gamma", module=M)
    return rep.validate()


def check_gamma_radical(M: FinModule, I: Ideal) -> Report:
    """Gamma_I(M / Gamma_I(M)) = 0."""
    rep = Report("gamma_radical", "Gamma_I(M / Gamma_I(M)) = 0")
    Q, _ = quotient_module(M, gamma(M, I))
    G = gamma(Q, I)
    if not G.is_zero():
        rep.fail("torsion survives in the quotient", module=M, residue=G)
    return rep.validate()

