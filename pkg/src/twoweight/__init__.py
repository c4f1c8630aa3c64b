"""Two-weight trace codes over Z_{p^h} from GR(p^h, 2) and their coset graphs."""

from .codes import (
    CodeSpec,
    WeightDistribution,
    build_code,
    closed_form_distribution,
    codeword,
    distribution_report,
    parse_paper,
    weight_distribution_enum,
)
from .graphs import (
    SrgParams,
    build_coset_graph,
    cover_check,
    latin_square_classify,
    predicted_srg,
    verify_srg,
)
from .puncture import dependence_classes, griesmer_check, mdr_check, projectivity_check, puncture
from .ring import RingParams, frobenius, ring_init, teich_digits, teichmuller_lift, trace

__all__ = [
    "CodeSpec",
    "RingParams",
    "SrgParams",
    "WeightDistribution",
    "build_code",
    "build_coset_graph",
    "closed_form_distribution",
    "codeword",
    "cover_check",
    "dependence_classes",
    "distribution_report",
    "frobenius",
    "griesmer_check",
    "latin_square_classify",
    "mdr_check",
    "parse_paper",
    "predicted_srg",
    "projectivity_check",
    "puncture",
    "ring_init",
    "teich_digits",
    "teichmuller_lift",
    "trace",
    "verify_srg",
    "weight_distribution_enum",
]
