"""Period metrics of complex tori and their duals.

Submodules:

* :mod:`~torusperiods.intlat` exact integer normal forms and lattice quotients
* :mod:`~torusperiods.exterior` constant-coefficient alternating forms
* :mod:`~torusperiods.torus` period matrices, dual tori, hermitian metric
* :mod:`~torusperiods.realstruct` real structures, component groups, real periods
* :mod:`~torusperiods.cli` batch command line
"""

from .errors import TorusError
from .realstruct import (
    RealStructure,
    bsd_norm,
    component_count,
    det_q_relation_check,
    dual_real_structure,
    index_formula_check,
    make_real_structure,
    random_real_torus,
    real_period,
    verify_real_duality,
)
from .torus import (
    ComplexTorus,
    HodgeForm,
    NormalizationConstant,
    dual_torus,
    duality_transport,
    faltings_norm_sq,
    faltings_norm_sq_oracle,
    make_torus,
    serre_pairing,
    verify_hermitian_duality,
)

__version__ = "0.1.0"
