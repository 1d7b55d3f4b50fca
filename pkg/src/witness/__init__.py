# Testigos cuantitativos de una copia
from src.witness.builder import build_witness_family, build_witness_sigma, build_witness_sigma_alpha
from src.witness.evaluation import witness_bound, witness_sq_sum_bound
from src.witness.models import (
    MeasurementSchedule,
    MeasurementTerm,
    UnusableWitnessError,
    WitnessFamily,
    WitnessOperator,
)
from src.witness.schedule import local_decomposition, write_schedule_csv

__all__ = [
    "WitnessOperator",
    "WitnessFamily",
    "MeasurementTerm",
    "MeasurementSchedule",
    "UnusableWitnessError",
    "build_witness_sigma",
    "build_witness_sigma_alpha",
    "build_witness_family",
    "witness_bound",
    "witness_sq_sum_bound",
    "local_decomposition",
    "write_schedule_csv",
]
