# Concurrencia multipartita
from src.multipartite.bounds import (
    enumerate_bipartitions,
    gamma_indices,
    multipartite_lb_tau,
    multipartite_pure_concurrence,
    multipartite_sum_sq_bound,
    multipartite_two_copy_bound,
    multipartite_witness_bound,
)
from src.multipartite.models import Bipartition, ChiGamma, DeskScaleError

__all__ = [
    "Bipartition",
    "ChiGamma",
    "DeskScaleError",
    "enumerate_bipartitions",
    "gamma_indices",
    "multipartite_pure_concurrence",
    "multipartite_lb_tau",
    "multipartite_sum_sq_bound",
    "multipartite_two_copy_bound",
    "multipartite_witness_bound",
]
