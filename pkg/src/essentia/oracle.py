"""Exhaustive brute-force ground truth for finite modules.

Enumerates the full submodule lattice of a small finite module and
checks the structure theorems against the raw definitions, with no
reliance on the criteria under test: essentiality, simplicity and
direct-summand flags come from pairwise intersection sweeps over the
enumerated lattice, socles from joins of simple members, and quotients
from explicit coset tables (never from normal-form reclassification).

Everything here is capped at |M| <= 1024.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import fgmod, kernel
from .errors import CapacityError, DomainError
from .fgmod import FGModule, Submodule
from .report import Check, Report

#: lattice enumeration bound.
LATTICE_CAP = 1024


# ---------------------------------------------------------------------------
# element arithmetic tables


def _coordinate_add_table(size: int, p: int | None) -> np.ndarray:
    """Addition on one torsion coordinate, encoded as [0, size).

    Integers add modulo size; polynomial residues add coefficientwise
    mod p (carry-free base-p addition of the encodings).
    """
    u = np.arange(size, dtype=np.int64)
    if p is None:
        return (u[:, None] + u[None, :]) % size
    out = np.zeros((size, size), dtype=np.int64)
    w = 1
    while w < size:
        du = (u // w) % p
        out += ((du[:, None] + du[None, :]) % p) * w
        w *= p
    return out


@dataclass(frozen=True)
class FiniteModuleTable:
    """Flat element arithmetic for a finite module: an n x n addition
    table over element indices plus scalar action maps (multiplication
    by x for polynomial rings; submodules are the action-closed
    subgroups)."""

    module: FGModule
    n: int
    add: np.ndarray = field(compare=False, repr=False)
    actions: np.ndarray = field(compare=False, repr=False)

    @cached_property
    def add_rows(self) -> list[list[int]]:
        return self.add.tolist()

    def element_of(self, index: int) -> fgmod.ModuleElement:
        return self.module.element_at(index)

    def index_of(self, el: fgmod.ModuleElement) -> int:
        return el.index()

    def mask_of_elements(self, elements) -> int:
        return kernel.mask_from_indices(e.index() for e in elements)

    def elements_of_mask(self, mask: int) -> tuple[fgmod.ModuleElement, ...]:
        return tuple(self.module.element_at(i) for i in kernel.indices_from_mask(mask))


def element_table(module: FGModule, scalars=()) -> FiniteModuleTable:
    """Build the arithmetic tables for a finite module.

    ``scalars`` adds redundant action maps (multiplication by the given
    ring elements); the submodule lattice must not depend on them.
    """
    n = module.cardinality()
    if n is None:
        raise DomainError("element tables need a finite module")
    if n > LATTICE_CAP:
        raise CapacityError(f"|M| = {n} exceeds the lattice cap {LATTICE_CAP}")
    sizes = module.torsion_sizes()
    m = len(sizes)
    strides = [1] * m
    for i in range(m - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    idx = np.arange(n, dtype=np.int64)
    coords = np.empty((n, m), dtype=np.int64)
    for i in range(m):
        coords[:, i] = (idx // strides[i]) % sizes[i]

    p = None if module.ring.is_int else module.ring.p
    add = np.zeros((n, n), dtype=np.int64)
    for i in range(m):
        t = _coordinate_add_table(sizes[i], p)
        add += t[np.ix_(coords[:, i], coords[:, i])] * strides[i]

    maps = []
    if not module.ring.is_int:
        maps.append(module.ring.variable())
    maps.extend(module.ring.element(s) for s in scalars)
    actions = np.zeros((len(maps), n), dtype=np.int64)
    for a, r in enumerate(maps):
        acc = np.zeros(n, dtype=np.int64)
        for i in range(m):
            sig = np.empty(sizes[i], dtype=np.int64)
            for u in range(sizes[i]):
                c = module._coord_from_digit(i, u)
                sig[u] = module._digit_of_coord((r * c) % module.factors[i])
            acc += sig[coords[:, i]] * strides[i]
        actions[a] = acc
    return FiniteModuleTable(module, n, add.astype(np.uint16), actions.astype(np.uint16))


# ---------------------------------------------------------------------------
# the lattice


@dataclass(frozen=True)
class SubmoduleLattice:
    """Every submodule of a finite module, as canonical element bitmasks,
    with flags recomputed from the definitions only."""

    module: FGModule
    table: FiniteModuleTable = field(compare=False, repr=False)
    data: kernel.LatticeData = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.data.masks)

    @property
    def masks(self) -> tuple[int, ...]:
        return self.data.masks

    @property
    def essential_incl_top(self):
        return self.data.essential_incl_top

    @property
    def proper_essential(self):
        return self.data.proper_essential

    @property
    def simple(self):
        return self.data.simple

    @property
    def direct_summand(self):
        return self.data.direct_summand

    @cached_property
    def index_by_mask(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.data.masks)}

    @property
    def full_mask(self) -> int:
        return self.data.masks[-1]

    def submodule(self, i: int) -> Submodule:
        els = self.table.elements_of_mask(self.data.masks[i])
        return Submodule(self.module, (), elements=els)

    def submodules(self) -> list[Submodule]:
        return [self.submodule(i) for i in range(len(self))]

    def index_of_submodule(self, sub: Submodule) -> int:
        if sub.module != self.module:
            raise DomainError("submodule of a different module")
        if sub.elements is None:
            raise DomainError("submodule has no element set")
        mask = self.table.mask_of_elements(sub.elements)
        try:
            return self.index_by_mask[mask]
        except KeyError:
            raise DomainError("element set is not a submodule of this lattice") from None

    def join(self, a: int, b: int) -> int:
        return kernel.join_masks(a, b, self.table.add_rows)

    @cached_property
    def socle_mask(self) -> int:
        """Join of all simple members (1 alone for the trivial module)."""
        soc = self.data.masks[0]
        for m, is_simple in zip(self.data.masks, self.data.simple):
            if is_simple:
                soc = self.join(soc, m)
        return soc

    def is_closed_under_meet_join(self) -> bool:
        """Closure cross-check: all pairwise meets and joins are members."""
        members = set(self.data.masks)
        for i, a in enumerate(self.data.masks):
            for b in self.data.masks[i + 1:]:
                if a & b not in members or self.join(a, b) not in members:
                    return False
        return True


def enumerate_submodules(module: FGModule, scalars=()) -> SubmoduleLattice:
    """Seed all cyclic submodules and close under pairwise joins."""
    table = element_table(module, scalars)
    data = kernel.build_lattice(table.add, table.actions)
    return SubmoduleLattice(module, table, data)


def proper_essentials(module: FGModule) -> list[Submodule]:
    """All proper essential submodules, by the definitional flag."""
    lat = enumerate_submodules(module)
    return [lat.submodule(i) for i, f in enumerate(lat.proper_essential) if f]


# ---------------------------------------------------------------------------
# theorem checks


def verify_semisimplicity_equivalences(module: FGModule, lattice: SubmoduleLattice | None = None) -> Report:
    """Equivalence of: every submodule a direct summand / no proper
    essential submodule / semisimple (socle = M, socle computed as the
    join of the simple members) / Soc(M) = M."""
    lat = lattice if lattice is not None else enumerate_submodules(module)
    a = all(lat.direct_summand)
    b = not any(lat.proper_essential)
    soc_is_all = lat.socle_mask == lat.full_mask
    c = soc_is_all
    d = soc_is_all
    values = {"all_direct_summands": a, "no_proper_essential": b,
              "semisimple": c, "socle_equals_module": d}
    ok = len(set(values.values())) == 1
    detail = " ".join(f"{k}={v}" for k, v in values.items())
    if not ok:
        names = list(values)
        bad = [f"({names[i]},{names[j]})" for i in range(4) for j in range(i + 1, 4)
               if values[names[i]] != values[names[j]]]
        detail += " violated_pairs=" + ",".join(bad)
    return Report(module.to_json(), (Check("semisimplicity_equivalences", ok, detail),))


def verify_socle_intersection(module: FGModule, lattice: SubmoduleLattice | None = None) -> Report:
    """Intersection of all essential submodules (the module itself
    included) equals the join of all simple submodules."""
    lat = lattice if lattice is not None else enumerate_submodules(module)
    inter = lat.full_mask
    for m, ess in zip(lat.masks, lat.essential_incl_top):
        if ess:
            inter &= m
    soc = lat.socle_mask
    ok = inter == soc
    detail = f"intersection_order={inter.bit_count()} socle_order={soc.bit_count()}"
    return Report(module.to_json(), (Check("socle_equals_intersection_of_essentials", ok, detail),))


def verify_socle_essentiality(module: FGModule, lattice: SubmoduleLattice | None = None) -> Report:
    """(i) every non-zero submodule contains a simple one; (ii) the socle
    is proper essential iff the module is not semisimple."""
    lat = lattice if lattice is not None else enumerate_submodules(module)
    simples = [m for m, s in zip(lat.masks, lat.simple) if s]
    contains_simple = True
    for m in lat.masks:
        if m.bit_count() == 1:
            continue
        if not any(s & m == s for s in simples):
            contains_simple = False
            break
    soc = lat.socle_mask
    soc_proper_essential = lat.proper_essential[lat.index_by_mask[soc]]
    semisimple = soc == lat.full_mask
    ok2 = soc_proper_essential == (not semisimple)
    checks = (
        Check("every_nontrivial_contains_simple", contains_simple, f"simple_count={len(simples)}"),
        Check("socle_proper_essential_iff_not_semisimple", ok2,
              f"socle_proper_essential={soc_proper_essential} semisimple={semisimple}"),
    )
    return Report(module.to_json(), checks)


# ---------------------------------------------------------------------------
# quotient transfer (explicit coset tables)


@dataclass(frozen=True)
class QuotientTable:
    """M/N materialized as coset tables: labels 0..q-1, label 0 = N."""

    q: int
    add: np.ndarray = field(compare=False, repr=False)
    actions: np.ndarray = field(compare=False, repr=False)
    label: np.ndarray = field(compare=False, repr=False)  # element index -> coset label

    def preimage_mask(self, quotient_mask: int) -> int:
        out = 0
        lab = self.label
        for x in range(len(lab)):
            if quotient_mask >> int(lab[x]) & 1:
                out |= 1 << x
        return out


def quotient_table(table: FiniteModuleTable, n_mask: int) -> QuotientTable:
    idxs = kernel.indices_from_mask(n_mask)
    rep = table.add[:, idxs].min(axis=1)
    reps = np.unique(rep)
    label = np.searchsorted(reps, rep)
    q_add = label[table.add[np.ix_(reps, reps)]]
    q_actions = label[table.actions[:, reps]] if len(table.actions) else np.zeros((0, len(reps)), dtype=np.int64)
    return QuotientTable(len(reps), q_add.astype(np.uint16), q_actions.astype(np.uint16), label)


def verify_quotient_transfer(module: FGModule, sub: Submodule, lattice: SubmoduleLattice | None = None) -> Report:
    """Forward quotient transfer: the preimage of every proper essential
    submodule of M/N is proper essential in M.  (The converse can fail;
    the detail records both proper-essential counts.)"""
    lat = lattice if lattice is not None else enumerate_submodules(module)
    i = lat.index_of_submodule(sub)
    n_mask = lat.masks[i]
    pc = n_mask.bit_count()
    if pc == 1 or n_mask == lat.full_mask:
        raise DomainError("quotient transfer needs a non-trivial proper submodule")
    qt = quotient_table(lat.table, n_mask)
    qdata = kernel.build_lattice(qt.add, qt.actions)
    forward_ok = True
    q_pe = 0
    for qm, flag in zip(qdata.masks, qdata.proper_essential):
        if not flag:
            continue
        q_pe += 1
        pre = qt.preimage_mask(qm)
        j = lat.index_by_mask.get(pre)
        if j is None or not lat.proper_essential[j]:
            forward_ok = False
    m_pe = sum(lat.proper_essential)
    detail = f"quotient_proper_essentials={q_pe} module_proper_essentials={m_pe}"
    return Report(module.to_json(), (Check("quotient_preimages_proper_essential", forward_ok, detail),))
