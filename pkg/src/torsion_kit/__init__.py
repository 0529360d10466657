"""Exact torsion functors over finite commutative rings.

Submodules are Howell-canonical row bases over Z/n, so equality and
membership are decided exactly.  The main entry points:

>>> from torsion_kit import make_ring, regular_module, gamma
>>> R = make_ring("Z/8")
>>> gamma(regular_module(R), R.ideal(2)).cardinality
8
"""
from ._version import __version__
from .apolarity import (
    InverseSystem,
    PolyIdeal,
    check_apolarity_layers,
    contract,
    reducedness_profile,
)
from .families import ModuleFamily, module_family
from .harness import (
    check_annihilated_equivalence,
    check_annihilator_layers,
    check_big_torsion,
    check_explicit_iso,
    check_gabriel_topology,
    check_gamma_radical,
    check_hom_radical,
    check_limits_commute,
    check_preradical,
    check_radical_class,
    check_radical_equivalence,
    check_splitting,
    check_torsion_radical_equivalence,
    check_ttf,
    gabriel_topology,
    psi_radical,
)
from .homological import (
    NotComputed,
    check_idempotent_weakly_proregular,
    check_local_cohomology_hom,
    check_spectral_vnr,
    ext,
    free_resolution,
    koszul_cohomology,
    koszul_complex,
    local_cohomology,
    local_homology,
    tor,
    weak_proregularity_check,
)
from .linalg import HowellBasis, howell_form
from .modules import (
    BoundExceeded,
    FinModule,
    ModuleError,
    ModuleMap,
    Submodule,
    annihilator_submodule,
    cyclic_module,
    direct_sum,
    enumerate_submodules,
    free_module,
    hom_module,
    ideal_scale,
    quotient_module,
    regular_module,
    submodule_as_module,
)
from .report import FAIL, PASS, UNDETERMINED, Report
from .rings import (
    FiniteRing,
    Ideal,
    RingError,
    ideal_power,
    ideal_product,
    ideal_radical,
    idempotent_ideals,
    is_idempotent,
    make_ring,
    parse_ring_text,
    power_stabilization_index,
)
from .runspec import InputError, RunSpec, load_runspec, parse_runspec, run
from .torsion import (
    chain_profile,
    coreduction_index,
    gamma,
    gamma_bar,
    is_complete,
    is_coreduced,
    is_k_coreduced,
    is_k_reduced,
    is_reduced,
    is_torsion,
    lambda_,
    locally_nilradical,
    reduction_index,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
