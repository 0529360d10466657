"""Small commutative unital rings, one per isomorphism class, keyed by a readable name.

Orders 2 through 9.  Every ring of order p or p^2 is one of Z/p^2, F_p^2,
F_p x F_p, F_p[x]/(x^2).  Order 8 has ten classes: six local ones and
four products.
"""
from __future__ import annotations

from typing import Any

from .linalg import howell_form
from .modules import FinModule
from .rings import FiniteRing, make_ring

_LOCAL_XY = {
    "type": "table", "n": 2, "orders": [2, 2, 2], "unit": [1, 0, 0], "name": "F2[x,y]/(x,y)^2",
    "table": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
              [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
              [[0, 0, 1], [0, 0, 0], [0, 0, 0]]],
}
_Z4_X_SQUARE_ZERO = {
    "type": "table", "n": 4, "orders": [4, 2], "unit": [1, 0], "name": "Z/4[x]/(2x,x^2)",
    "table": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
}
_Z4_X_SQUARE_TWO = {
    "type": "table", "n": 4, "orders": [4, 2], "unit": [1, 0], "name": "Z/4[x]/(2x,x^2-2)",
    "table": [[[1, 0], [0, 1]], [[0, 1], [2, 0]]],
}

SMALL_RINGS: dict[str, Any] = {
    "Z/2": "Z/2", "Z/3": "Z/3", "Z/5": "Z/5", "Z/7": "Z/7",
    "Z/4": "Z/4", "F4": "F4", "F2 x F2": "F2 x F2", "F2[x]/(x^2)": "F2[x]/(x^2)",
    "Z/6": "Z/6",
    "Z/8": "Z/8", "F8": "F8", "F2[x]/(x^3)": "F2[x]/(x^3)",
    "F2[x,y]/(x,y)^2": _LOCAL_XY, "Z/4[x]/(2x,x^2)": _Z4_X_SQUARE_ZERO,
    "Z/4[x]/(2x,x^2-2)": _Z4_X_SQUARE_TWO,
    "F2 x F4": "F2 x F4", "F2 x Z/4": "F2 x Z/4", "F2 x F2[x]/(x^2)": "F2 x F2[x]/(x^2)",
    "F2 x F2 x F2": "F2 x F2 x F2",
    "Z/9": "Z/9", "F9": "F9", "F3 x F3": "F3 x F3", "F3[x]/(x^2)": "F3[x]/(x^2)",
}


def small_rings(max_order: int = 9) -> dict[str, FiniteRing]:
    out = {}
    for name, spec in SMALL_RINGS.items():
        R = make_ring(spec)
        if R.order <= max_order:
            out[name] = R
    return out


def _kronecker_32(R: FiniteRing) -> FinModule:
    """The 3-generated indecomposable of order 32 over a local ring with m^2 = 0 and m = (u, v).

    Top t1, t2, t3 and socle s1, s2 with u: t1 -> s1, t2 -> s2 and
    v: t2 -> s1, t3 -> s2.
    """
    name = R.description.get("name")
    if name == "F2[x,y]/(x,y)^2":
        # coordinates t1 t2 t3 s1 s2; basis 1, x, y
        e = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
        x = [e[3], e[4], [0] * 5, [0] * 5, [0] * 5]
        y = [[0] * 5, e[3], e[4], [0] * 5, [0] * 5]
        return FinModule(R, 5, howell_form([], 2, 5), (e, x, y), "K(3,2)")
    if name == "Z/4[x]/(2x,x^2)":
        # coordinates t1 t2 t3 with 2 t3 = 0, so s1 = 2 t1 and s2 = 2 t2; basis 1, x
        e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        x = [[0, 0, 0], [2, 0, 0], [0, 2, 0]]
        return FinModule(R, 3, howell_form([[0, 0, 2]], 4, 3), (e, x), "K(3,2)")
    raise ValueError(f"no Kronecker module recorded for {name!r}")


def complete_extras(R: FiniteRing, max_order: int) -> list[FinModule]:
    """Modules to add to the 2-generated quotients so that ``module_family`` is complete.

    Only the two non-principal rings of order 8 need anything below order 64.
    Both have m^2 = 0 and residue field F2, so their modules without simple
    summands are Kronecker representations; the only indecomposable needing
    three generators with at most five composition factors is the
    preinjective of dimension (3, 2).
    """
    if R.is_principal_ideal_ring():
        return []
    if max_order >= 64:
        raise ValueError("completeness is only recorded for max_order < 64")
    return [_kronecker_32(R)] if max_order >= 32 else []
