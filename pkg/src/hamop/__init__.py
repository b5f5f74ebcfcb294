"""Exact symbolic engine for scalar Hamiltonian differential operators and
differential substitutions in one space variable."""

from .coeff import I, GaussianRational
from .diffalg import DiffFunction, JetContext, equals, is_quasiconstant, order, partial_derivative, substitute_jets, total_derivative
from .diffop import LinDiffOp, adjoint, apply, commutator, compose, is_skew_adjoint

__version__ = "0.1.0"
