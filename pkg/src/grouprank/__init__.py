"""Bilinear complexity of finite group algebras.

Group tables and their structure, character degrees, radical powers in the
modular case, exact lower/upper bound evaluation, and verified bilinear
multiplication algorithms.
"""
from .fields import FieldSpec
from .groups import FiniteGroup, GroupSpec, build_group
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "FieldSpec", "FiniteGroup", "GroupSpec", "build_group", "__version__"]
