"""Nullstellensatz certificates and brute-force checks for strong edge coloring."""
from .configmodel import Configuration, ConfigGraph, ConflictSpec, load_config
from .engine import check_monomial, find_witness, load_fixture, run_configuration, run_fixture
from .polycore import CappedPolynomial, naive_expand
from .schedule import reduce_product

__all__ = [
    "CappedPolynomial",
    "ConfigGraph",
    "Configuration",
    "ConflictSpec",
    "check_monomial",
    "find_witness",
    "load_config",
    "load_fixture",
    "naive_expand",
    "reduce_product",
    "run_configuration",
    "run_fixture",
]
