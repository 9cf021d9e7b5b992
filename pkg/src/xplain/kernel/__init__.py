"""Bitmask kernels for the hot model/answer-set checks.

Two interchangeable backends implement the same candidate checks over a
packed, flat-array encoding of a ground program: a compiled extension
(``_speedups``, built from Cython, programs up to 63 atoms) and a pure
Python fallback (any program size). The backend is selected at import
time; ``XPLAIN_KERNEL=py`` or ``XPLAIN_KERNEL=c`` forces one side.
"""

from __future__ import annotations

import os
from typing import TYPE_CHECKING

from . import _pure

if TYPE_CHECKING:
    from ..ground import GroundProgram

_CMP_CODES = {">": 0, ">=": 1, "<": 2, "<=": 3, "=": 4, "!=": 5}

try:
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:
    _speedups = None

_requested = os.environ.get("XPLAIN_KERNEL", "").strip().lower()
if _requested == "py":
    _speedups = None
elif _requested == "c" and _speedups is None:
    raise ImportError("XPLAIN_KERNEL=c but the compiled kernel is not built")

#: Name of the default backend picked at import time.
DEFAULT_BACKEND = "compiled" if _speedups is not None else "python"


def compiled_available() -> bool:
    return _speedups is not None


def pack_program(gp: "GroundProgram") -> dict:
    """Flatten a ground program into the arrays both backends consume."""
    n_atoms = len(gp.table)
    heads: list[int] = []
    pos: list[int] = []
    neg: list[int] = []
    rule_agg_off: list[int] = [0]
    agg_cmp: list[int] = []
    agg_bound: list[int] = []
    agg_negated: list[int] = []
    agg_elem_off: list[int] = [0]
    elem_mask: list[int] = []
    elem_weight: list[int] = []
    for rule in gp.rules:
        heads.append(_mask(rule.head))
        pos.append(_mask(rule.pos))
        neg.append(_mask(rule.neg))
        for agg in rule.aggregates:
            agg_cmp.append(_CMP_CODES[agg.constraint.comparison])
            agg_bound.append(agg.constraint.bound)
            agg_negated.append(1 if agg.negated else 0)
            for atom, weight in agg.constraint.domain:
                elem_mask.append(1 << atom)
                elem_weight.append(weight)
            agg_elem_off.append(len(elem_mask))
        rule_agg_off.append(len(agg_cmp))
    return {
        "n_atoms": n_atoms,
        "heads": heads,
        "pos": pos,
        "neg": neg,
        "rule_agg_off": rule_agg_off,
        "agg_cmp": agg_cmp,
        "agg_bound": agg_bound,
        "agg_negated": agg_negated,
        "agg_elem_off": agg_elem_off,
        "elem_mask": elem_mask,
        "elem_weight": elem_weight,
    }


def _mask(atom_ids) -> int:
    m = 0
    for a in atom_ids:
        m |= 1 << a
    return m


# Raw subset descent is fine up to this many true atoms; beyond it the
# minimality check switches to the propagation-based submodel search.
SUBSET_SWEEP_LIMIT = 18


class KernelProgram:
    """Backend-independent candidate checks for one packed program."""

    def __init__(self, raw, packed: dict):
        self._raw = raw
        self._packed = packed
        self.n_atoms: int = packed["n_atoms"]

    @property
    def backend(self) -> str:
        return self._raw.backend

    def is_model(self, bits: int) -> bool:
        return self._raw.is_model(bits)

    def is_answer_set(self, bits: int) -> bool:
        if bits.bit_count() <= SUBSET_SWEEP_LIMIT:
            return self._raw.is_answer_set(bits)
        packed = self._packed
        full = (1 << self.n_atoms) - 1
        reduct = [
            rule
            for rule in range(len(packed["heads"]))
            if _pure.body_status(packed, rule, bits, full & ~bits) is True
        ]
        if any(not packed["heads"][rule] & bits for rule in reduct):
            return False
        return not _pure.has_proper_submodel(packed, bits, reduct)

    def answer_sets_brute(self, limit: int | None = None) -> list[int]:
        return self._raw.answer_sets_brute(limit)


def compile_program(gp: "GroundProgram", backend: str | None = None) -> KernelProgram:
    """Build the candidate-check kernel for a ground program.

    ``backend`` may be "c"/"compiled", "py"/"python", or None for the
    import-time default; the compiled backend silently yields to the pure
    one for programs beyond its 63-atom word size.
    """
    packed = pack_program(gp)
    wants_compiled = {
        None: _speedups is not None,
        "c": True,
        "compiled": True,
        "py": False,
        "python": False,
    }.get(backend)
    if wants_compiled is None:
        raise ValueError(f"unknown kernel backend {backend!r}")
    if wants_compiled and _speedups is None:
        raise ImportError("compiled kernel requested but not built")
    if wants_compiled and packed["n_atoms"] <= 63:
        return KernelProgram(_speedups.SpeedKernel(packed), packed)
    return KernelProgram(_pure.PureKernel(packed), packed)
