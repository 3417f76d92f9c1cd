"""Random matrices from compact groups and symmetric spaces, their Born
distributions, exact expected distances to uniform, and SQ lower bounds."""
__version__ = "0.1.0"

from .borndist import BornDist, DiagObservable, born_distribution, sq_value, tvd_to_uniform
from .closedform import (
    EnsembleId,
    appendix_interval,
    asymptote,
    expected_tvd,
    per_entry_deviation,
    twirl_closed_form,
)
from .errors import DomainError, InvariantError
from .matrixcore import GroupSpec, RngStream, sample_haar
from .sqbound import SqParams, lower_bound_q, regime_table
from .symspaces import SpaceSpec, apply_involution, sample_space
from .verify import ks_law_check, mc_expected_tvd, mc_twirl

__all__ = [
    "BornDist",
    "DiagObservable",
    "DomainError",
    "EnsembleId",
    "GroupSpec",
    "InvariantError",
    "RngStream",
    "SpaceSpec",
    "SqParams",
    "appendix_interval",
    "apply_involution",
    "asymptote",
    "born_distribution",
    "expected_tvd",
    "ks_law_check",
    "lower_bound_q",
    "mc_expected_tvd",
    "mc_twirl",
    "per_entry_deviation",
    "regime_table",
    "sample_haar",
    "sample_space",
    "sq_value",
    "tvd_to_uniform",
    "twirl_closed_form",
]
