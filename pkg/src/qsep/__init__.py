"""Entanglement detection and dense-coding classification for bipartite states."""

__version__ = "0.1.0"

from qsep.config import Tolerances, DEFAULT_TOLERANCES
from qsep.errors import (
    QsepError,
    DimensionError,
    ValidationError,
    DomainError,
    NumericalError,
    UnsupportedDimensionError,
)
from qsep.linalg import (
    BipartiteDims,
    Spectrum,
    kron,
    partial_transpose,
    partial_trace,
    eigh,
    svd,
    hs_inner,
)
from qsep.states import (
    DensityMatrix,
    PureState,
    bell_state,
    werner,
    projector,
    product_state,
    maximally_mixed,
    random_pure,
    random_density,
    random_separable,
)
from qsep.criteria import (
    CriterionVerdict,
    SchmidtDecomposition,
    schmidt,
    is_product,
    ppt_test,
    majorizes,
    majorization_test,
    von_neumann_entropy,
    entropy_test,
    shannon_entropy,
)
from qsep.witness import (
    Witness,
    LinearMap,
    witness_value,
    canonical_witness_2x2,
    decomposable_witness,
    min_product_expectation,
    choi_from_map,
    map_from_choi,
    apply_map_partially,
    witness_from_chsh,
)
from qsep.bell import (
    ChshSetting,
    correlator,
    chsh_operator,
    chsh_value,
    maximize_chsh,
    optimal_singlet_setting,
)
from qsep.densecoding import (
    Ensemble,
    ClassificationReport,
    holevo_chi,
    dc_capacity,
    reported_capacity,
    is_dc,
    pauli_encoding_ensemble,
    simulate_protocol,
    classify,
)
