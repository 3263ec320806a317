"""Closure (saturation) of sublattices of free modules.

For a torsion-free module, the closure of a submodule N collects every
element with a non-zero multiple inside N.  Here the torsion-free
modules are full-rank free modules R^n over Z or F_p[x], submodules are
lattices given by basis matrices, and the closure is the saturation
N's rational span intersected back with the ambient.  Localized (D^-1)
statements are never materialized: they are checked through their
traces in the ambient and through ranks.

Bases are kept in canonical echelon normal form, so every identity in
this module is a plain data comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import smith
from .errors import DomainError
from .pid import PIDElement, Ring
from .report import Check, Report
from .smith import Matrix


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of R^ambient_rank with a canonical echelon basis."""

    ring: Ring
    ambient_rank: int
    basis: tuple[tuple[PIDElement, ...], ...]

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_rank:
                raise DomainError("basis row length does not match the ambient rank")

    @classmethod
    def from_rows(cls, ring: Ring, ambient_rank: int, rows) -> "IntLattice":
        return cls(ring, ambient_rank, smith.echelon_normal_form(ring, ambient_rank, rows))

    @classmethod
    def full(cls, ring: Ring, ambient_rank: int) -> "IntLattice":
        return cls.from_rows(ring, ambient_rank, Matrix.identity(ring, ambient_rank).entries)

    @classmethod
    def zero(cls, ring: Ring, ambient_rank: int) -> "IntLattice":
        return cls(ring, ambient_rank, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        vec = tuple(self.ring.element(e) for e in vec)
        if len(vec) != self.ambient_rank:
            raise DomainError("vector length does not match the ambient rank")
        rem = smith.reduce_vector(self.ring, self.basis, vec)
        return all(e.is_zero() for e in rem)

    def decompose(self, vec):
        """Coordinates of vec in this basis, or None if vec is outside."""
        out = [self.ring.element(e) for e in vec]
        coords = []
        for row in self.basis:
            col = next(j for j, e in enumerate(row) if not e.is_zero())
            q, r = divmod(out[col], row[col])
            if not r.is_zero():
                return None
            coords.append(q)
            if not q.is_zero():
                for k in range(len(out)):
                    out[k] = out[k] - q * row[k]
        return tuple(coords) if all(e.is_zero() for e in out) else None

    def is_sublattice_of(self, other: "IntLattice") -> bool:
        if self.ring != other.ring or self.ambient_rank != other.ambient_rank:
            return False
        return all(other.contains(row) for row in self.basis)

    def sum(self, other: "IntLattice") -> "IntLattice":
        self._match(other)
        return IntLattice.from_rows(self.ring, self.ambient_rank, self.basis + other.basis)

    def intersect(self, other: "IntLattice") -> "IntLattice":
        self._match(other)
        if not self.basis or not other.basis:
            return IntLattice.zero(self.ring, self.ambient_rank)
        stacked = self.basis + other.basis
        kern = smith.left_kernel(self.ring, self.ambient_rank, stacked)
        rows = []
        for u in kern:
            row = [self.ring.zero()] * self.ambient_rank
            for c, brow in zip(u[:len(self.basis)], self.basis):
                for k in range(self.ambient_rank):
                    row[k] = row[k] + c * brow[k]
            rows.append(tuple(row))
        return IntLattice.from_rows(self.ring, self.ambient_rank, rows)

    def _match(self, other: "IntLattice"):
        if self.ring != other.ring or self.ambient_rank != other.ambient_rank:
            raise DomainError("lattices live in different ambient modules")

    def to_json(self):
        return {"ring": self.ring.to_json(), "ambient_rank": self.ambient_rank,
                "basis": [[e.to_json() for e in row] for row in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "IntLattice":
        try:
            ring = Ring.from_json(obj["ring"])
            rank = int(obj["ambient_rank"])
            rows = obj["basis"]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad lattice description: {exc}") from exc
        return cls.from_rows(ring, rank, rows)


def _saturation_in_full(n: IntLattice) -> IntLattice:
    """Saturation inside the full free module, through the Smith
    decomposition of the basis: the first rank rows of V^-1 span it."""
    if not n.basis:
        return IntLattice.zero(n.ring, n.ambient_rank)
    mat = Matrix(n.ring, len(n.basis), n.ambient_rank, n.basis)
    snf, vinv = smith.smith_with_basis_inverse(mat)
    r = len(snf.invariant_diagonal())
    return IntLattice.from_rows(n.ring, n.ambient_rank, vinv.entries[:r])


def saturate(n: IntLattice, ambient: IntLattice) -> IntLattice:
    """Cl_M(N) = M intersected with the rational span of N."""
    n._match(ambient)
    if not n.is_sublattice_of(ambient):
        raise DomainError("N is not a sublattice of the ambient module")
    sat = _saturation_in_full(n)
    if ambient == IntLattice.full(ambient.ring, ambient.ambient_rank):
        return sat
    return ambient.intersect(sat)


def _apply_map(row, f: Matrix):
    acc = [f.ring.zero()] * f.cols
    for i, c in enumerate(row):
        if c.is_zero():
            continue
        for j in range(f.cols):
            acc[j] = acc[j] + c * f.entries[i][j]
    return tuple(acc)


def closure_image(f: Matrix, t: IntLattice) -> tuple[IntLattice, IntLattice]:
    """(f(Cl(T)), Cl(f(T))) between full ambients; the first is always
    contained in the second."""
    if t.ring != f.ring:
        raise DomainError("map and lattice rings differ")
    if t.ambient_rank != f.rows:
        raise DomainError("map domain does not match the lattice ambient")
    cl = _saturation_in_full(t)
    lhs = IntLattice.from_rows(f.ring, f.cols, [_apply_map(row, f) for row in cl.basis])
    img = IntLattice.from_rows(f.ring, f.cols, [_apply_map(row, f) for row in t.basis])
    rhs = _saturation_in_full(img)
    return lhs, rhs


def saturated_sum(n1: IntLattice, n2: IntLattice,
                  ambient: IntLattice) -> tuple[IntLattice, IntLattice]:
    """Closure of a direct sum both ways: Cl_M(N1 (+) N2), and the trace
    of the localized sum of closures Cl_M(N1) (+) Cl_M(N2)."""
    for n in (n1, n2):
        n._match(ambient)
        if not n.is_sublattice_of(ambient):
            raise DomainError("summand is not a sublattice of the ambient module")
    if n1.intersect(n2).rank != 0:
        raise DomainError("summands must intersect trivially (direct sum)")
    lhs = saturate(n1.sum(n2), ambient)
    cl1 = saturate(n1, ambient)
    cl2 = saturate(n2, ambient)
    rhs = saturate(cl1.sum(cl2), ambient)
    return lhs, rhs


def rank_sequence(u: IntLattice, v: IntLattice,
                  ambient: IntLattice) -> tuple[int, int, int]:
    """Ranks along 0 -> Cl_M(U) -> Cl_M(V) -> Cl_{M/U}(V/U) -> 0.

    The quotient is modeled as M/Cl_M(U), which is torsion-free; the
    last rank is that of the saturated image of V in it.  Exactness at
    the rational level amounts to rV = rU + rQ.
    """
    if not u.is_sublattice_of(v):
        raise DomainError("U must be contained in V")
    if not v.is_sublattice_of(ambient):
        raise DomainError("V must be contained in the ambient module")
    cl_u = saturate(u, ambient)
    r_u = cl_u.rank
    r_v = saturate(v, ambient).rank
    m_rank = ambient.rank
    if r_u == 0:
        return 0, r_v, r_v
    # coordinates of Cl(U) with respect to the ambient basis
    coords = []
    for row in cl_u.basis:
        c = ambient.decompose(row)
        if c is None:
            raise DomainError("closure escaped the ambient module")
        coords.append(c)
    mat = Matrix(ambient.ring, r_u, m_rank, tuple(coords))
    snf, vinv = smith.smith_with_basis_inverse(mat)
    proj = snf.V  # y |-> (y @ V)[r_u:] projects onto M/Cl(U)
    q_rows = []
    for row in v.basis:
        c = ambient.decompose(row)
        if c is None:
            raise DomainError("V escaped the ambient module")
        q_rows.append(_apply_map(c, proj)[r_u:])
    quotient_image = IntLattice.from_rows(ambient.ring, m_rank - r_u, q_rows)
    q_sat = _saturation_in_full(quotient_image)
    r_q = q_sat.rank
    # rational splitness: every saturated quotient basis vector lifts into
    # Cl_M(V) (pad the missing coordinates with zeros and change basis back)
    cl_v = saturate(v, ambient)
    zero = ambient.ring.zero()
    for qrow in q_sat.basis:
        full_coords = (zero,) * r_u + qrow
        m_coords = _apply_map(full_coords, vinv)
        lift = [zero] * ambient.ambient_rank
        for c, brow in zip(m_coords, ambient.basis):
            for k in range(ambient.ambient_rank):
                lift[k] = lift[k] + c * brow[k]
        assert cl_v.contains(lift), "quotient basis vector failed to lift into Cl(V)"
    return r_u, r_v, r_q


def socle_closure_check(n: IntLattice, ambient: IntLattice) -> Report:
    """Soc commutes with closure on torsion-free modules; over Z and
    F_p[x] both sides are zero, which is asserted structurally."""
    n._match(ambient)
    checks = []
    nonzero_rows = sum(1 for row in n.basis if any(not e.is_zero() for e in row))
    checks.append(Check("socle_of_submodule_trivial", nonzero_rows == n.rank,
                        "torsion-free: every non-zero element has zero annihilator, "
                        "so there is no simple submodule"))
    cl_zero = saturate(IntLattice.zero(n.ring, n.ambient_rank), ambient)
    checks.append(Check("socle_commutes_with_closure", cl_zero.rank == 0,
                        "Soc(Cl(N)) = 0 = Cl(Soc(N))"))
    socle_essential = False  # the zero submodule never meets anything
    semisimple = ambient.rank == 0
    checks.append(Check("no_essential_socle_unless_semisimple",
                        semisimple or not socle_essential,
                        f"ambient_rank={ambient.rank} socle_rank=0"))
    return Report(n.to_json(), tuple(checks))
