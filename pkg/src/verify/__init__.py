"""
Claim checkers for the operator T.

Every checker returns a WitnessReport: the objects it constructed plus the
exact inequalities they satisfy. Nothing here is tolerance based.

Components:
- report: Inequality and WitnessReport
- hypercyclic: hyp0, transitivity and reiterative-recurrence witnesses
- block_bounds: lower-block bounds and the fraction bound on one block
- distributional: escalation scan and the cool certificate
- corpus: seeded random vectors, pairs and index sets
- suites: property suites behind `lindyn verify`
"""

from .report import Inequality, WitnessReport
from .hypercyclic import hyp0_witness, transitivity_witness, reiterative_witness
from .block_bounds import (
    exclusion_violations,
    fhc0_check,
    fhc1_check,
    fhc2_fraction,
    fhc2_sweep,
    lower_block_profile,
)
from .distributional import cool_certificate, cool_certificate_pair, prelim_scan
from .suites import CLAIMS, CaseResult, SuiteResult, run_suite, with_prefix_retry

__all__ = [
    "Inequality",
    "WitnessReport",
    "hyp0_witness",
    "transitivity_witness",
    "reiterative_witness",
    "fhc0_check",
    "fhc1_check",
    "fhc2_fraction",
    "fhc2_sweep",
    "exclusion_violations",
    "lower_block_profile",
    "prelim_scan",
    "cool_certificate",
    "cool_certificate_pair",
    "CLAIMS",
    "CaseResult",
    "SuiteResult",
    "run_suite",
    "with_prefix_retry",
]
