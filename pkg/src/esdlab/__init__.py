"""Two-qubit entanglement robustness under local depolarizing noise.

Basis convention throughout: product basis ordered (|00>, |01>, |10>, |11>),
index n = 2*q1 + q2.  States are plain 4x4 complex numpy arrays; validation
helpers live in :mod:`esdlab.qstate`.
"""

from esdlab.qstate import (
    AnsatzParams,
    BlochData,
    RandomSpec,
    bloch_vectors,
    fidelity,
    linear_entropy,
    make_ansatz,
    random_state,
    validate_state,
)
from esdlab.entanglement import (
    Measures,
    concurrence,
    concurrence_ansatz,
    measures_of,
    negativity,
    negativity_ansatz,
    partial_transpose,
)
from esdlab.channel import ChannelParams, LocalFilter, apply_depolarizing, apply_filter
from esdlab.robustness import (
    BracketError,
    RobustnessResult,
    SeparableStateError,
    esd_polynomial,
    normalized_robustness,
    robustness_pure,
    s_crit_ansatz,
    s_crit_numeric,
)
from esdlab.extremal import (
    ExtremalPoint,
    mfes_concurrence_general,
    mfes_concurrence_one_sided,
    mfes_concurrence_uniform,
    mfes_negativity_one_sided,
    mres_concurrence,
    negativity_extremals,
    quasi_mfes,
)
from esdlab.mcstats import (
    BinnedSeries,
    EnsembleRecord,
    binned_averages,
    envelope_check,
    run_ensemble,
)

__version__ = "0.1.0"
