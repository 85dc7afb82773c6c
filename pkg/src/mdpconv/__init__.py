"""Construction and verification of MDP convolutional codes over finite fields."""

from __future__ import annotations

__version__ = "0.1.0"

from .construction import ConstructionParams, build_dual, build_generator, field_size_report
from .convmodel import CodeDescriptor, column_distance_bruteforce, profile, sliding
from .descriptor import read_descriptor, write_descriptor
from .fieldcore import FieldTower, field_build
from .mdpcheck import classify, dual_generator, dual_mdp_check, minor_check_G, minor_check_H

__all__ = [
    "CodeDescriptor",
    "ConstructionParams",
    "FieldTower",
    "build_dual",
    "build_generator",
    "classify",
    "column_distance_bruteforce",
    "dual_generator",
    "dual_mdp_check",
    "field_build",
    "field_size_report",
    "minor_check_G",
    "minor_check_H",
    "profile",
    "read_descriptor",
    "sliding",
    "write_descriptor",
]
