from .allsat import BruteForceOracle, FlashlightAllSat, UnitCostOracle, flashlight_allsat
from .cnf import (CnfFormula, DimacsError, InstanceTooLarge, brute_force_sat, emit_dimacs,
                  parse_dimacs, read_dimacs)
from .explicit import (EmptyInstance, ExplicitGenerator, ExplicitSet, bit_strings, explicit_generator,
                       parse_explicit_set, read_explicit_set)
from .pad import PadEnumerator, PaddedInstance, flashlight_solver, pad_enumerator, padding_count
from .scripted import ScriptedEnumerator, burst, dense_with_gaps, doubling_blocks

__all__ = [
    "BruteForceOracle", "FlashlightAllSat", "UnitCostOracle", "flashlight_allsat",
    "CnfFormula", "DimacsError", "InstanceTooLarge", "brute_force_sat", "emit_dimacs",
    "parse_dimacs", "read_dimacs",
    "EmptyInstance", "ExplicitGenerator", "ExplicitSet", "bit_strings", "explicit_generator",
    "parse_explicit_set", "read_explicit_set",
    "PadEnumerator", "PaddedInstance", "flashlight_solver", "pad_enumerator", "padding_count",
    "ScriptedEnumerator", "burst", "dense_with_gaps", "doubling_blocks",
]
