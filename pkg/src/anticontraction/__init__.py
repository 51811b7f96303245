"""Anticolimits of finite sinks and anticontraction of zigzag diagrams."""
from .anticolim import (Anticocone, anticolimits_exist, antipushout, canonical_anticocone,
                        check_lemma_suite, enumerate_anticolimits, is_anticolimit, sink)
from .anticontract import anticontract, contract_range, recursive_anticontract, round_trip
from .errors import (CapabilityMissing, KernelError, MoveError, NoColimit, NoLimit, ParseError,
                     PosetError, ValidationError)
from .fincat import FINORD, FINPOS, FINPRE, FINSET, Diagram, Mor, PreObj, SetObj
from .poset import FinPoset, Hypergraph, MonotoneMap
from .zigzag import ZigCategory, Zigzag, ZigzagMap, contraction, reg_dual, zigzag_colimit

__version__ = "0.1.0"

__all__ = [
    "Anticocone", "anticolimits_exist", "antipushout", "canonical_anticocone", "check_lemma_suite",
    "enumerate_anticolimits", "is_anticolimit", "sink", "anticontract", "contract_range",
    "recursive_anticontract", "round_trip", "CapabilityMissing", "KernelError", "MoveError",
    "NoColimit", "NoLimit", "ParseError", "PosetError", "ValidationError", "FINORD", "FINPOS",
    "FINPRE", "FINSET", "Diagram", "Mor", "PreObj", "SetObj", "FinPoset", "Hypergraph",
    "MonotoneMap", "ZigCategory", "Zigzag", "ZigzagMap", "contraction", "reg_dual", "zigzag_colimit",
]
