# Modelos físicos de referencia
from src.models.isotropic import (
    IsotropicParams,
    isotropic_exact_concurrence,
    isotropic_state,
    isotropic_Valpha_sum_closed_form,
    isotropic_Vi_closed_form,
)
from src.models.qutrit import (
    IntegrationDriftError,
    LindbladModel,
    TrajectoryPoint,
    evolve,
    lindblad_rhs,
    phi_me,
    qutrit_initial_state,
)
from src.models.states import ModelParameterError, basis_state, ghz_state, phi_plus, w_state
from src.models.wootters import wootters_concurrence

__all__ = [
    "IntegrationDriftError",
    "IsotropicParams",
    "LindbladModel",
    "ModelParameterError",
    "TrajectoryPoint",
    "basis_state",
    "evolve",
    "ghz_state",
    "isotropic_Valpha_sum_closed_form",
    "isotropic_Vi_closed_form",
    "isotropic_exact_concurrence",
    "isotropic_state",
    "lindblad_rhs",
    "phi_me",
    "phi_plus",
    "qutrit_initial_state",
    "w_state",
    "wootters_concurrence",
]
