"""Enumeration of the environments variables names."""

# standard library
from enum import Enum


class EnvironmentVars(Enum):
    pass


class SspaEnvironmentVars(EnvironmentVars):
    """Environment variables names read by the verifier."""

    # Reporting
    # If not set, reports are only written on stderr
    SSPA_LOG_FILE = "SSPA_LOG_FILE"

    # Saturation engine
    SSPA_MAX_RULES = "SSPA_MAX_RULES"
    SSPA_TIMEOUT = "SSPA_TIMEOUT"
    SSPA_MAX_TERM_DEPTH = "SSPA_MAX_TERM_DEPTH"
    # Largest ~ partition for which cover sets are enumerated
    SSPA_MAX_PARTITION = "SSPA_MAX_PARTITION"
    SSPA_TRANSFORM_KNOWLEDGE = "SSPA_TRANSFORM_KNOWLEDGE"
    # Compare orderings up to transitive closure in rule implication
    SSPA_CLOSURE_AWARE_IMPLIES = "SSPA_CLOSURE_AWARE_IMPLIES"

    # Ground oracle
    SSPA_ORACLE_POOL = "SSPA_ORACLE_POOL"
    SSPA_ORACLE_DEPTH = "SSPA_ORACLE_DEPTH"
    SSPA_ORACLE_STEPS = "SSPA_ORACLE_STEPS"
