"""Kernel selection: compiled lattice core with a pure-Python fallback.

The compiled extension (``essentia._lattice``, built from Cython) and
the pure module (``essentia._lattice_py``) implement the same two entry
points and produce identical output.  Set ``ESSENTIA_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

_FORCED_PURE = os.environ.get("ESSENTIA_PURE_PYTHON") == "1"

if _FORCED_PURE:
    from . import _lattice_py as _backend
    BACKEND = "pure-python"
else:
    try:
        from . import _lattice as _backend  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _lattice_py as _backend
        BACKEND = "pure-python"


def backend_name() -> str:
    return BACKEND


@dataclass(frozen=True)
class LatticeData:
    """Raw lattice of a finite module: bitmasks over element indices
    (canonically sorted by (popcount, value)) plus definitional flags."""

    n: int
    masks: tuple[int, ...]
    essential_incl_top: tuple[bool, ...]
    proper_essential: tuple[bool, ...]
    simple: tuple[bool, ...]
    direct_summand: tuple[bool, ...]


def build_lattice(add_table, action_tables, backend=None) -> LatticeData:
    """Enumerate every submodule of the finite module described by an
    n x n addition table (index 0 = zero element) and optional scalar
    action maps, and flag each one from the definitions."""
    impl = backend if backend is not None else _backend
    masks = impl.enumerate_masks(add_table, action_tables)
    ess, prop, simple, summand = impl.compute_flags(masks, add_table)
    return LatticeData(len(add_table), tuple(masks), tuple(bool(b) for b in ess),
                       tuple(bool(b) for b in prop), tuple(bool(b) for b in simple),
                       tuple(bool(b) for b in summand))


# mask helpers shared by callers --------------------------------------------


def mask_from_indices(indices) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def indices_from_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        mask ^= low
        out.append(low.bit_length() - 1)
    return out


def translate_mask(mask: int, add_row) -> int:
    row = list(map(int, add_row))
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        out |= 1 << row[low.bit_length() - 1]
    return out


def join_masks(a: int, b: int, add_rows) -> int:
    """Sum of two submodule masks (union of translates)."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    out = a
    m = b & ~1
    while m:
        low = m & -m
        m ^= low
        out |= translate_mask(a, add_rows[low.bit_length() - 1])
    return out
