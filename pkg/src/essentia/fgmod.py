"""Finitely generated modules over the supported PIDs.

A module is stored in invariant-factor form: a free rank (betti number)
plus a divisibility chain of non-zero non-unit factors.  Elements are
coordinate vectors with torsion coordinates kept as canonical residues,
so element equality is plain data equality.

Submodules of finite modules are canonicalized as their full sorted
element set (desk-scale cap below); submodules of modules with free rank
are kept as a normal-form basis of the free projection plus the element
set of the torsion slice, which covers the socle and witness
constructions but is not a general submodule calculus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from . import pid, smith
from .errors import CapacityError, DomainError
from .pid import PIDElement, Ring

#: canonical element sets are only materialized up to this size.
ENUM_CAP = 4096


@dataclass(frozen=True)
class FGModule:
    """R^betti (+) R/(a_1) (+) ... (+) R/(a_m) with a_1 | a_2 | ... | a_m."""

    ring: Ring
    betti: int
    factors: tuple[PIDElement, ...]

    def __post_init__(self):
        if self.betti < 0:
            raise DomainError("negative free rank")
        prev = None
        for a in self.factors:
            if a.ring != self.ring:
                raise DomainError("invariant factor from the wrong ring")
            if a.is_zero() or a.is_unit():
                raise DomainError(f"invariant factor {a} must be a non-zero non-unit")
            if not a.is_unit_normal():
                raise DomainError(f"invariant factor {a} is not unit-normal")
            if prev is not None and not prev.divides(a):
                raise DomainError(f"invariant factors must form a divisibility chain ({prev} does not divide {a})")
            prev = a

    # -- shape ----------------------------------------------------------

    @property
    def torsion_rank(self) -> int:
        return len(self.factors)

    def is_finite(self) -> bool:
        return self.betti == 0

    def torsion_sizes(self) -> tuple[int, ...]:
        """|R/(a_i)| for each torsion component."""
        if self.ring.is_int:
            return tuple(a.payload for a in self.factors)
        p = self.ring.p
        return tuple(p ** a.size() for a in self.factors)

    def cardinality(self) -> int | None:
        """Number of elements, or None when the module is infinite."""
        if self.betti > 0:
            return None
        n = 1
        for s in self.torsion_sizes():
            n *= s
        return n

    # -- elements ---------------------------------------------------------

    def element(self, free=(), torsion=()) -> "ModuleElement":
        fr = tuple(self.ring.element(e) for e in free)
        to = tuple(self.ring.element(e) for e in torsion)
        if len(fr) != self.betti or len(to) != self.torsion_rank:
            raise DomainError("coordinate count does not match the module shape")
        return ModuleElement(self, fr, tuple(t % a for t, a in zip(to, self.factors)))

    def zero_element(self) -> "ModuleElement":
        z = self.ring.zero()
        return self.element((z,) * self.betti, (z,) * self.torsion_rank)

    def generator(self, i: int) -> "ModuleElement":
        """Standard generator of the i-th component (free components first)."""
        if not 0 <= i < self.betti + self.torsion_rank:
            raise DomainError(f"component index {i} out of range")
        one, zero = self.ring.one(), self.ring.zero()
        fr = [zero] * self.betti
        to = [zero] * self.torsion_rank
        if i < self.betti:
            fr[i] = one
        else:
            to[i - self.betti] = one
        return self.element(fr, to)

    def element_count(self) -> int:
        n = self.cardinality()
        if n is None:
            raise DomainError("infinite module has no element enumeration")
        return n

    def element_at(self, index: int) -> "ModuleElement":
        """Inverse of index_of; first torsion coordinate most significant."""
        n = self.element_count()
        if not 0 <= index < n:
            raise DomainError(f"element index {index} out of range")
        sizes = self.torsion_sizes()
        digits = []
        for s in reversed(sizes):
            index, d = divmod(index, s)
            digits.append(d)
        digits.reverse()
        return self.element((), tuple(self._coord_from_digit(i, d) for i, d in enumerate(digits)))

    def elements(self) -> Iterator["ModuleElement"]:
        for i in range(self.element_count()):
            yield self.element_at(i)

    def _coord_from_digit(self, i: int, d: int) -> PIDElement:
        if self.ring.is_int:
            return PIDElement(self.ring, d)
        p = self.ring.p
        coeffs = []
        while d:
            d, c = divmod(d, p)
            coeffs.append(c)
        return self.ring.element(tuple(coeffs))

    def _digit_of_coord(self, e: PIDElement) -> int:
        if self.ring.is_int:
            return e.payload
        v = 0
        for c in reversed(e.payload):
            v = v * self.ring.p + c
        return v

    # -- construction helpers ---------------------------------------------

    def direct_sum(self, other: "FGModule") -> "FGModule":
        if self.ring != other.ring:
            raise DomainError("direct sum of modules over different rings")
        exps: dict[PIDElement, list[int]] = {}
        for mod in (self, other):
            _collect_prime_exponents(mod.factors, exps)
        return _from_prime_exponents(self.ring, self.betti + other.betti, exps)

    @classmethod
    def from_orders(cls, ring: Ring, orders) -> "FGModule":
        """Assemble from arbitrary cyclic orders; zero payloads add free rank."""
        betti = 0
        keep = []
        for raw in orders:
            el = ring.element(raw)
            if el.is_zero():
                betti += 1
            elif not el.is_unit():
                keep.append(el.normalized())
        exps: dict[PIDElement, list[int]] = {}
        _collect_prime_exponents(keep, exps)
        return _from_prime_exponents(ring, betti, exps)

    # -- rendering ----------------------------------------------------------

    def to_json(self):
        return {"ring": self.ring.to_json(), "betti": self.betti,
                "factors": [a.to_json() for a in self.factors]}

    @classmethod
    def from_json(cls, obj) -> "FGModule":
        try:
            ring = Ring.from_json(obj["ring"])
            betti = int(obj["betti"])
            factors = tuple(ring.element(a) for a in obj["factors"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad module description: {exc}") from exc
        return cls(ring, betti, factors)

    def __str__(self):
        parts = []
        if self.betti:
            base = "Z" if self.ring.is_int else f"F_{self.ring.p}[x]"
            parts.append(base if self.betti == 1 else f"{base}^{self.betti}")
        for a in self.factors:
            parts.append(f"Z/{a}" if self.ring.is_int else f"F_{self.ring.p}[x]/({a})")
        return " (+) ".join(parts) if parts else "0"


def _collect_prime_exponents(factors, exps: dict[PIDElement, list[int]]):
    for f in factors:
        for prime, e in pid.factor(f).factors:
            exps.setdefault(prime, []).append(e)


def _from_prime_exponents(ring: Ring, betti: int, exps: dict[PIDElement, list[int]]) -> FGModule:
    depth = max((len(v) for v in exps.values()), default=0)
    cols = {p: sorted(v, reverse=True) + [0] * (depth - len(v)) for p, v in exps.items()}
    chain = []
    for j in range(depth - 1, -1, -1):  # smallest invariant factor first
        f = ring.one()
        for p in sorted(cols, key=lambda q: q.sort_key()):
            f = f * p ** cols[p][j]
        chain.append(f.normalized())
    return FGModule(ring, betti, tuple(chain))


@dataclass(frozen=True)
class ModuleElement:
    """Coordinate vector; torsion coordinate i is the canonical residue mod a_i."""

    module: FGModule
    free: tuple[PIDElement, ...]
    torsion: tuple[PIDElement, ...]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.free) and all(e.is_zero() for e in self.torsion)

    def is_torsion(self) -> bool:
        return all(e.is_zero() for e in self.free)

    def _check(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            raise DomainError("elements belong to different modules")

    def __add__(self, other):
        self._check(other)
        return self.module.element(tuple(a + b for a, b in zip(self.free, other.free)),
                                   tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __neg__(self):
        return self.module.element(tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r) -> "ModuleElement":
        r = self.ring.element(r) if not isinstance(r, PIDElement) else r
        if r.ring != self.ring:
            raise DomainError(f"scalar from {r.ring} acting on a {self.ring}-module")
        return self.module.element(tuple(r * a for a in self.free), tuple(r * a for a in self.torsion))

    def __rmul__(self, r):
        return self.scale(r)

    @property
    def ring(self) -> Ring:
        return self.module.ring

    def index(self) -> int:
        """Enumeration index within a finite parent (torsion-lex order)."""
        if not self.module.is_finite():
            raise DomainError("infinite module has no element enumeration")
        idx = 0
        for s, c in zip(self.module.torsion_sizes(), self.torsion):
            idx = idx * s + self.module._digit_of_coord(c)
        return idx

    def sort_key(self):
        return tuple(e.sort_key() for e in self.free) + tuple(e.sort_key() for e in self.torsion)

    def to_json(self):
        return {"free": [e.to_json() for e in self.free],
                "torsion": [e.to_json() for e in self.torsion]}

    def __str__(self):
        coords = [str(e) for e in self.free] + [str(e) for e in self.torsion]
        return "(" + ", ".join(coords) + ")"


# ---------------------------------------------------------------------------
# element-level operations


def annihilator(m: ModuleElement) -> PIDElement:
    """Unit-normal generator of Ann_R(m); zero for torsion-free elements,
    one exactly for the zero element."""
    if any(not e.is_zero() for e in m.free):
        return m.ring.zero()
    ann = m.ring.one()
    for a, t in zip(m.module.factors, m.torsion):
        ann = pid.lcm(ann, a.exact_div(pid.gcd(a, t)))
    return ann


def element_order(m: ModuleElement) -> int | None:
    """|<m>| = |R/Ann(m)|, or None when the orbit is infinite."""
    ann = annihilator(m)
    if ann.is_zero():
        return None
    if m.ring.is_int:
        return ann.payload
    return m.ring.p ** ann.size()


# ---------------------------------------------------------------------------
# submodules


@dataclass(frozen=True)
class Submodule:
    """A submodule with a canonical form.

    Finite parent: ``elements`` is the full element set sorted by
    enumeration index.  Parent with free rank: ``free_basis`` is the
    echelon normal-form basis of the free-coordinate projection and
    ``torsion_elements`` the element set of the torsion slice (None when
    it is not materialized).  Generators never take part in equality.
    """

    module: FGModule
    generators: tuple[ModuleElement, ...] = field(compare=False)
    elements: tuple[ModuleElement, ...] | None = None
    free_basis: tuple[tuple[PIDElement, ...], ...] | None = None
    torsion_elements: tuple[ModuleElement, ...] | None = None

    def cardinality(self) -> int | None:
        if self.elements is not None:
            return len(self.elements)
        if self.free_basis is not None and not self.free_basis:
            return None if self.torsion_elements is None else len(self.torsion_elements)
        return None

    @cached_property
    def element_set(self) -> frozenset:
        pool = self.elements if self.elements is not None else self.torsion_elements
        if pool is None:
            raise DomainError("submodule has no materialized element set")
        return frozenset(pool)

    def is_zero_submodule(self) -> bool:
        if self.elements is not None:
            return len(self.elements) == 1
        return not self.free_basis and self.torsion_elements is not None and len(self.torsion_elements) == 1

    def is_whole_module(self) -> bool:
        if self.elements is not None:
            return len(self.elements) == self.module.element_count()
        return False

    def contains(self, m: ModuleElement) -> bool:
        if m.module != self.module:
            raise DomainError("element of a different module")
        if self.elements is not None:
            return m in self.element_set
        # component-split form: free projection in the lattice, torsion
        # slice in the element set
        if self.free_basis is None:
            raise DomainError("submodule has no canonical form")
        rem = smith.reduce_vector(self.module.ring, self.free_basis, m.free)
        if any(not e.is_zero() for e in rem):
            return False
        if all(e.is_zero() for e in m.free):
            if self.torsion_elements is None:
                raise DomainError("torsion slice of this submodule is not materialized")
            return m in self.element_set
        return True

    def to_json(self):
        out = {"generators": [g.to_json() for g in self.generators]}
        if self.elements is not None:
            out["elements"] = [e.to_json() for e in self.elements]
        if self.free_basis is not None:
            out["free_basis"] = [[e.to_json() for e in row] for row in self.free_basis]
        if self.torsion_elements is not None:
            out["torsion_elements"] = [e.to_json() for e in self.torsion_elements]
        return out


def _additive_orbit(g: ModuleElement) -> list[ModuleElement]:
    """Non-zero multiples 1*g, 2*g, ... up to the order of g."""
    out = []
    cur = g
    while not cur.is_zero():
        out.append(cur)
        cur = cur + g
    return out


def _torsion_closure(module: FGModule, gens) -> set[ModuleElement]:
    """Additive + scalar closure of torsion elements, capped at ENUM_CAP."""
    closed = {module.zero_element()}
    queue = list(gens)
    x = None if module.ring.is_int else module.ring.variable()
    while queue:
        g = queue.pop()
        if g in closed:
            continue
        orbit = _additive_orbit(g)
        closed |= {s + o for s in closed for o in orbit}
        if len(closed) > ENUM_CAP:
            raise CapacityError(f"submodule enumeration capped at {ENUM_CAP} elements")
        if x is not None:
            for e in list(closed):
                img = e.scale(x)
                if img not in closed:
                    queue.append(img)
    return closed


def span(module: FGModule, gens) -> Submodule:
    """Submodule generated by the given elements.

    Requires a finite parent or purely torsion generators; free
    coordinates would make the orbit infinite.
    """
    gens = tuple(gens)
    for g in gens:
        if g.module != module:
            raise DomainError("generator from a different module")
        if not g.is_torsion():
            raise CapacityError("infinite orbit: generator has a non-zero free coordinate")
    closed = _torsion_closure(module, gens)
    ordered = tuple(sorted(closed, key=lambda e: e.index() if module.is_finite() else e.sort_key()))
    if module.is_finite():
        return Submodule(module, gens, elements=ordered)
    return Submodule(module, gens, free_basis=(), torsion_elements=ordered)


def cyclic(m: ModuleElement) -> Submodule:
    """The cyclic submodule <m> = {r*m}."""
    return span(m.module, (m,))


def zero_submodule(module: FGModule) -> Submodule:
    return span(module, ())


def full_submodule(module: FGModule) -> Submodule:
    if not module.is_finite():
        raise CapacityError("cannot materialize an infinite module")
    gens = tuple(module.generator(i) for i in range(module.torsion_rank))
    return span(module, gens)


def mixed_submodule(module: FGModule, generators, free_rows, torsion_gens) -> Submodule:
    """Component-split submodule of a module with free rank: a sublattice
    of the free part plus a torsion-slice submodule."""
    if module.betti == 0:
        raise DomainError("mixed form is only for modules with free rank")
    basis = smith.echelon_normal_form(module.ring, module.betti, free_rows)
    try:
        closed = _torsion_closure(module, torsion_gens)
        ordered = tuple(sorted(closed, key=lambda e: e.sort_key()))
    except CapacityError:
        ordered = None
    return Submodule(module, tuple(generators), free_basis=basis, torsion_elements=ordered)


# ---------------------------------------------------------------------------
# socle, semisimplicity, primary parts


def socle_decomposition(module: FGModule) -> tuple[tuple[PIDElement, int], ...]:
    """(prime, multiplicity) pairs: multiplicity of p = #{i : p | a_i}."""
    counts: dict[PIDElement, int] = {}
    for a in module.factors:
        for prime, _ in pid.factor(a).factors:
            counts[prime] = counts.get(prime, 0) + 1
    return tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))


def socle(module: FGModule) -> tuple[Submodule, tuple[tuple[PIDElement, int], ...]]:
    """Soc(M) as a submodule plus its semisimple decomposition.

    The free part contributes nothing; component i contributes the simple
    submodule generated by (a_i/p) e_i for each prime p dividing a_i.
    """
    gens = []
    for i, a in enumerate(module.factors):
        e_i = module.generator(module.betti + i)
        for prime, _ in pid.factor(a).factors:
            gens.append(e_i.scale(a.exact_div(prime)))
    return span(module, gens), socle_decomposition(module)


def socle_module(module: FGModule) -> FGModule:
    """The socle as an abstract module (a direct sum of R/p's)."""
    exps: dict[PIDElement, list[int]] = {}
    for prime, mult in socle_decomposition(module):
        exps[prime] = [1] * mult
    return _from_prime_exponents(module.ring, 0, exps)


def is_semisimple(module: FGModule) -> bool:
    return module.betti == 0 and all(pid.is_squarefree(a) for a in module.factors)


def primary_part(module: FGModule, p: PIDElement, k: int | None = None) -> Submodule:
    """Ann_M(p^k) for finite k, or the p-primary component for k = None."""
    if module.betti != 0:
        raise DomainError("primary parts are defined for torsion modules only")
    if p.ring != module.ring:
        raise DomainError("prime from the wrong ring")
    if not pid.is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k is not None and (not isinstance(k, int) or k < 1):
        raise DomainError("power must be a positive integer or None")
    p = p.normalized()
    gens = []
    for i, a in enumerate(module.factors):
        if k is None:
            q = module.ring.one()
            rest = a
            while p.divides(rest):
                rest = rest.exact_div(p)
                q = q * p
        else:
            q = pid.gcd(a, p**k)
        gens.append(module.generator(i).scale(a.exact_div(q)))
    return span(module, gens)


def primary_module(module: FGModule, p: PIDElement) -> FGModule:
    """The p-primary component as an abstract module (p-power factors)."""
    if module.betti != 0:
        raise DomainError("primary parts are defined for torsion modules only")
    p = p.normalized()
    factors = []
    for a in module.factors:
        q = module.ring.one()
        rest = a
        while p.divides(rest):
            rest = rest.exact_div(p)
            q = q * p
        if not q.is_unit():
            factors.append(q.normalized())
    return FGModule(module.ring, 0, tuple(factors))


def torsion_part(module: FGModule) -> tuple[FGModule, tuple[int, ...]]:
    """Tor(M) as its own module plus the ambient coordinate embedding."""
    tor = FGModule(module.ring, 0, module.factors)
    embedding = tuple(range(module.betti, module.betti + module.torsion_rank))
    return tor, embedding


def embed_torsion_element(module: FGModule, el: ModuleElement) -> ModuleElement:
    """Lift an element of torsion_part(module)[0] into the ambient module."""
    tor, _ = torsion_part(module)
    if el.module != tor:
        raise DomainError("element does not belong to the torsion part")
    return module.element((module.ring.zero(),) * module.betti, el.torsion)
