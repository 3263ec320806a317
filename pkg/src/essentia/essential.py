"""Existence criteria and constructive witnesses for proper essential
submodules, plus the socle-essentiality test.

The decision is purely structural: a finitely generated module over a
PID has a proper essential submodule exactly when its free rank is
positive or some invariant factor is not square-free.  Witnesses shrink
one direct summand to a prime ideal and keep every other component
full; on finite modules they can be replayed against the definitional
element sweep (``is_proper_essential``).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fgmod, pid
from .errors import CapacityError, DomainError
from .fgmod import FGModule, Submodule
from .pid import PIDElement


@dataclass(frozen=True)
class BettiPositive:
    """The module has a free direct summand."""

    def to_json(self):
        return {"kind": "betti_positive"}


@dataclass(frozen=True)
class NonSquarefreeFactor:
    """Invariant factor ``index`` is divisible by prime**exponent, exponent >= 2."""

    index: int
    prime: PIDElement
    exponent: int

    def to_json(self):
        return {"kind": "non_squarefree_factor", "index": self.index,
                "prime": self.prime.to_json(), "exponent": self.exponent}


@dataclass(frozen=True)
class WitnessCertificate:
    """Which component was shrunk, and to which prime ideal.

    Component indices count free components first, then torsion ones;
    every other component is kept full, so essentiality follows
    componentwise from the direct-sum law.
    """

    component: int
    ideal_generator: PIDElement

    def to_json(self):
        return {"component": self.component, "ideal_generator": self.ideal_generator.to_json()}


@dataclass(frozen=True)
class EssentialVerdict:
    exists: bool
    reason: BettiPositive | NonSquarefreeFactor | None
    witness: Submodule | None
    certificate: WitnessCertificate | None

    def to_json(self):
        out = {"exists": self.exists,
               "reason": None if self.reason is None else self.reason.to_json(),
               "witness": None}
        if self.witness is not None:
            wit = {"generators": [g.to_json() for g in self.witness.generators],
                   "certificate": self.certificate.to_json() if self.certificate else None}
            out["witness"] = wit
        return out


def _decide(module: FGModule) -> BettiPositive | NonSquarefreeFactor | None:
    if module.betti >= 1:
        return BettiPositive()
    for i, a in enumerate(module.factors):
        for prime, e in pid.factor(a).factors:
            if e >= 2:
                return NonSquarefreeFactor(i, prime, e)
    return None


def has_proper_essential(module: FGModule) -> EssentialVerdict:
    """Decide existence; when a proper essential submodule exists, a
    concrete witness and its componentwise certificate are attached."""
    reason = _decide(module)
    if reason is None:
        return EssentialVerdict(False, None, None, None)
    witness, cert = _witness(module, reason)
    return EssentialVerdict(True, reason, witness, cert)


def essential_witness(module: FGModule) -> Submodule:
    """A concrete proper essential submodule (deterministic choice)."""
    reason = _decide(module)
    if reason is None:
        raise DomainError("semisimple module has no proper essential submodule")
    return _witness(module, reason)[0]


def _witness(module: FGModule, reason) -> tuple[Submodule, WitnessCertificate]:
    ring = module.ring
    if isinstance(reason, BettiPositive):
        p = ring.smallest_prime()
        gens = [module.generator(0).scale(p)]
        gens += [module.generator(i) for i in range(1, module.betti + module.torsion_rank)]
        one, zero = ring.one(), ring.zero()
        rows = []
        for i in range(module.betti):
            row = [zero] * module.betti
            row[i] = p if i == 0 else one
            rows.append(tuple(row))
        torsion_gens = [module.generator(module.betti + j) for j in range(module.torsion_rank)]
        sub = fgmod.mixed_submodule(module, gens, rows, torsion_gens)
        return sub, WitnessCertificate(0, p)
    # torsion case: shrink component reason.index to (p)/(a_i)
    i, p = reason.index, reason.prime
    gens = [module.generator(j) for j in range(module.torsion_rank)]
    gens[i] = gens[i].scale(p)
    try:
        sub = fgmod.span(module, gens)
    except CapacityError:
        # over the enumeration cap: generator form only
        sub = Submodule(module, tuple(gens))
    return sub, WitnessCertificate(i, p)


def is_proper_essential(module: FGModule, sub: Submodule) -> bool:
    """Definitional element sweep on a finite module: E is proper
    essential iff E is neither 0 nor M and every non-zero cyclic
    submodule meets it non-trivially (every non-trivial submodule
    contains a non-zero cyclic one)."""
    n = module.cardinality()
    if n is None:
        raise DomainError("the element sweep needs a finite module")
    if n > fgmod.ENUM_CAP:
        raise CapacityError(f"|M| = {n} exceeds the sweep cap {fgmod.ENUM_CAP}")
    if sub.module != module:
        raise DomainError("submodule of a different module")
    if sub.elements is None:
        raise DomainError("submodule has no element set")
    closed = fgmod._torsion_closure(module, sub.elements)
    eset = set(sub.elements)
    if closed != eset:
        raise DomainError("element set is not closed under the module operations")
    if len(eset) == 1 or len(eset) == n:
        return False
    zero = module.zero_element()
    for idx in range(1, n):
        m = module.element_at(idx)
        orbit = fgmod._torsion_closure(module, (m,))
        if not any(e in eset for e in orbit if e != zero):
            return False
    return True


def primary_criterion(module: FGModule, p: PIDElement) -> bool:
    """Strictly growing Ann_M(p^i) chain, decided structurally: true iff
    p**2 divides some invariant factor."""
    if module.betti != 0:
        raise DomainError("the primary criterion applies to torsion modules")
    if p.ring != module.ring:
        raise DomainError("prime from the wrong ring")
    if not pid.is_prime(p):
        raise DomainError(f"{p} is not prime")
    psq = (p * p).normalized()
    return any(psq.divides(a) for a in module.factors)


def is_socle_essential(module: FGModule) -> bool:
    """Soc(M) is proper essential iff M is torsion and not semisimple.

    Finite/torsion f.g. modules satisfy the simple-submodule property,
    so the socle is essential exactly in the non-semisimple case; a free
    generator's cyclic submodule meets the socle trivially, so modules
    with free rank never have essential socles.
    """
    if module.betti >= 1:
        return False
    return not fgmod.is_semisimple(module)
