"""Local quantum Fisher information and local quantum uncertainty for the
thermal two-qubit Heisenberg XYZ chain with a z-axis Dzyaloshinskii-Moriya term."""

from .errors import ConvergenceError, NotPSDError, NumericalError
from .linalg import EigenDecomposition, eigh, kron, matrix_sqrt, max_eig_sym3, pauli
from .measures import (
    MeasureResult,
    brute_force_min,
    closed_form_m_diag,
    closed_form_w_diag,
    lqfi,
    lqfi_matrix,
    lqu,
    lqu_matrix,
    qfi,
    skew_information,
    variance,
)
from .model import (
    ModelParams,
    SpectralData,
    XStateElements,
    closed_form_elements,
    hamiltonian,
    spectrum,
    thermal_state,
)
from .sweep import SweepRow, SweepSpec, emit_csv, eval_point, figure_preset, run_sweep, self_test

__all__ = [
    "ConvergenceError", "NotPSDError", "NumericalError",
    "EigenDecomposition", "eigh", "kron", "matrix_sqrt", "max_eig_sym3", "pauli",
    "MeasureResult", "brute_force_min", "closed_form_m_diag", "closed_form_w_diag",
    "lqfi", "lqfi_matrix", "lqu", "lqu_matrix", "qfi", "skew_information", "variance",
    "ModelParams", "SpectralData", "XStateElements", "closed_form_elements",
    "hamiltonian", "spectrum", "thermal_state",
    "SweepRow", "SweepSpec", "emit_csv", "eval_point", "figure_preset", "run_sweep", "self_test",
]
