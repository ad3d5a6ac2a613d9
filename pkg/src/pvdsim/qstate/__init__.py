"""Sparse two-branch states, purified joint states and small dense oracles."""
from .bits import BitString, all_strings
from .dense import (DEFAULT_QUBIT_CAP, DenseState, DimensionError, hadamard_transform,
                    qubit_cap, random_density, random_projector, random_state, random_unitary,
                    set_qubit_cap, trace_distance, trace_norm)
from .joint import (BASES, COMPUTATIONAL, HADAMARD, DenseJointState, PurifiedJointState,
                    c_measure, lift, purify)
from .theorems import (GentleResult, MappingResult, check_distinguish_implies_map,
                       check_gentle_measurement)
from .twobranch import (TwoBranchState, computational_measure, decrypt_bit, hadamard_measure,
                        hadamard_measure_batch)

__all__ = [
    "BASES", "COMPUTATIONAL", "HADAMARD", "DEFAULT_QUBIT_CAP",
    "BitString", "all_strings", "DenseState", "DimensionError", "DenseJointState",
    "PurifiedJointState", "TwoBranchState", "GentleResult", "MappingResult",
    "c_measure", "check_distinguish_implies_map", "check_gentle_measurement",
    "computational_measure", "decrypt_bit", "hadamard_measure", "hadamard_measure_batch", "hadamard_transform",
    "lift", "purify", "qubit_cap", "random_density", "random_projector", "random_state",
    "random_unitary", "set_qubit_cap", "trace_distance", "trace_norm",
]
