"""Re-parseable text forms of functions and operators."""

from __future__ import annotations

from typing import TYPE_CHECKING

from .diffalg import DiffFunction, format_function

if TYPE_CHECKING:
    from .diffop import LinDiffOp

__all__ = ["format_function", "format_operator"]


def _dpow(k: int) -> str:
    return "D" if k == 1 else f"D^{k}"


def format_operator(op: "LinDiffOp") -> str:
    """Highest order first: ``(a_N) o D^N + ... + (a_0)``."""
    if op.is_zero():
        return "0"
    pieces = []
    for k in range(op.order, -1, -1):
        c = op.coeffs[k]
        if c.is_zero():
            continue
        if k == 0:
            body, neg = f"({format_function(c)})", False
        elif c == 1:
            body, neg = _dpow(k), False
        elif c == -1:
            body, neg = _dpow(k), True
        else:
            body, neg = f"({format_function(c)}) o {_dpow(k)}", False
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def describe(value) -> str:
    if isinstance(value, DiffFunction):
        return format_function(value)
    return str(value)
