#!/usr/bin/env python3
"""
Centralized Algebra Configuration

This module holds the search bounds, the built-in field models and the
valuation chains used across the library. Every module that needs a limit or
a named model imports it from this single source.
"""
import os
from typing import Any, Dict, List

# Load environment variables
try:
    from dotenv import load_dotenv
    load_dotenv(os.path.join(os.path.dirname(__file__), ".env"))
except Exception:
    pass


def _env_int(name: str, default: int) -> int:
    """Read an integer setting, falling back to the default on junk."""
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw, 0)
    except ValueError:
        return default


# Enumeration and search bounds
MAX_CLASS_DIM: int = _env_int("SQC_MAX_CLASS_DIM", 10)
MAX_WGROUP_GENERATORS: int = _env_int("SQC_MAX_WGROUP_GENERATORS", 5)
CLOSURE_LIMIT: int = _env_int("SQC_CLOSURE_LIMIT", 2 ** 14)
SPLIT_SEARCH_LIMIT: int = _env_int("SQC_SPLIT_SEARCH_LIMIT", 2 ** 12)
RING_ISO_LIMIT: int = _env_int("SQC_RING_ISO_LIMIT", 16)
ISO_SEARCH_LIMIT: int = _env_int("SQC_ISO_SEARCH_LIMIT", 2 ** 16)
BINARY_VALUES_CACHE_SIZE: int = _env_int("SQC_BINARY_VALUES_CACHE_SIZE", 4096)

# Rational point oracle
DEFAULT_HEIGHT_BOUND: int = _env_int("SQC_HEIGHT_BOUND", 60)
MAX_HEIGHT_BOUND: int = 10 ** 4

# Modular symbol oracle precision (exponent of p in the modulus)
ORACLE_ODD_EXPONENT: int = _env_int("SQC_ORACLE_ODD_EXPONENT", 3)
ORACLE_DYADIC_EXPONENT: int = _env_int("SQC_ORACLE_DYADIC_EXPONENT", 8)

LOG_LEVEL: str = os.environ.get("SQC_LOG_LEVEL", "WARNING")

# Built-in model registry
BUILTIN_MODEL_MAPPING: Dict[str, Any] = {
    "model_list": [
        # Finite fields
        {"model_name": "F5", "descriptor": "Fq:5", "params": {"level": 1}},
        {"model_name": "F7", "descriptor": "Fq:7", "params": {"level": 2}},
        {"model_name": "F13", "descriptor": "Fq:13", "params": {"level": 1}},
        # Local fields
        {"model_name": "Q2", "descriptor": "Qp:2", "params": {"level": 4}},
        {"model_name": "Q3", "descriptor": "Qp:3", "params": {"level": 2}},
        {"model_name": "Q5", "descriptor": "Qp:5", "params": {"level": 1}},
        {"model_name": "Q7", "descriptor": "Qp:7", "params": {"level": 2}},
        {"model_name": "Q13", "descriptor": "Qp:13", "params": {"level": 1}},
        # Real closed and iterated Laurent series
        {"model_name": "R", "descriptor": "R", "params": {"level": None}},
        {"model_name": "RX", "descriptor": "Tower(R;X)", "params": {"level": None}},
        {"model_name": "RXY", "descriptor": "Tower(Tower(R;X);Y)", "params": {"level": None}},
        # S-supported rationals
        {"model_name": "QS", "descriptor": "QS:2,3,5,7,13", "params": {"level": None}},
    ],
    "valuation_chains": [
        {"Q3": ["3-adic"]},
        {"Q5": ["5-adic"]},
        {"Q7": ["7-adic"]},
        {"Q13": ["13-adic"]},
        {"Q2": ["2-adic"]},
        {"RX": ["X-adic"]},
        {"RXY": ["Y-adic", "Y-adic/X-adic"]},
        {"QS": ["13-adic", "7-adic", "5-adic", "3-adic"]},
    ],
    "suites": {
        "dictionary": ["F5", "F7", "Q3", "Q5", "Q7", "Q13", "Q2", "R", "RX", "RXY"],
        "round_trip": ["Q2", "Q3", "Q13", "RX"],
        "oracle": ["Q2", "Q3", "Q5", "Q7", "Q13"],
        "c0_kernel": ["Q2", "Q5", "Q13", "F5", "F13"],
        "lifting": ["Q3", "Q5", "Q7", "Q13", "RX", "RXY"],
    },
}


def get_model_config(model_name: str) -> Dict[str, Any]:
    """Get model configuration by model_name from BUILTIN_MODEL_MAPPING."""
    for entry in BUILTIN_MODEL_MAPPING["model_list"]:
        if entry.get("model_name") == model_name:
            return entry
    raise ValueError(f"Model '{model_name}' not found in BUILTIN_MODEL_MAPPING")


def get_valuation_chain(model_name: str) -> List[str]:
    """Get the valuation search chain for a built-in model."""
    for rule in BUILTIN_MODEL_MAPPING["valuation_chains"]:
        if model_name in rule:
            return rule[model_name]
    return []


def get_suite(suite_name: str) -> List[str]:
    """Model names of a named selftest suite."""
    suites = BUILTIN_MODEL_MAPPING["suites"]
    if suite_name not in suites:
        raise ValueError(f"Suite '{suite_name}' not found in BUILTIN_MODEL_MAPPING")
    return list(suites[suite_name])


def model_name_for_descriptor(descriptor: str) -> str:
    """Reverse lookup; returns '' for descriptors outside the registry."""
    for entry in BUILTIN_MODEL_MAPPING["model_list"]:
        if entry["descriptor"] == descriptor:
            return entry["model_name"]
    return ""
