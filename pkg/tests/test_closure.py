import random

import pytest

from bruteforce import rational_span_coefficient
from essentia.closure import (IntLattice, closure_image, rank_sequence, saturate,
                              saturated_sum, socle_closure_check)
from essentia.errors import DomainError
from essentia.pid import ZZ, polynomial_ring
from essentia.smith import Matrix

F2 = polynomial_ring(2)


def lat(rows, rank=None, ring=ZZ):
    rank = rank if rank is not None else (len(rows[0]) if rows else 0)
    return IntLattice.from_rows(ring, rank, rows)


def full(rank, ring=ZZ):
    return IntLattice.full(ring, rank)


def int_rows(lattice):
    return [[e.payload for e in row] for row in lattice.basis]


def random_lattice(rng, rank=4, max_rows=4):
    rows = [[rng.randint(-5, 5) for _ in range(rank)]
            for _ in range(rng.randint(0, max_rows))]
    return IntLattice.from_rows(ZZ, rank, rows)


class TestSaturateExamples:
    def test_2z_in_z(self):
        cl = saturate(lat([[2]], 1), full(1))
        assert int_rows(cl) == [[1]]

    def test_span_2_0(self):
        cl = saturate(lat([[2, 0]], 2), full(2))
        assert int_rows(cl) == [[1, 0]]
        # membership witness: r * (1,0) in N for r = 2
        assert lat([[2, 0]], 2).contains([2, 0])

    def test_zero(self):
        cl = saturate(IntLattice.zero(ZZ, 3), full(3))
        assert cl.rank == 0

    def test_not_sublattice_rejected(self):
        with pytest.raises(DomainError):
            saturate(lat([[1, 0]], 2), lat([[2, 0], [0, 2]], 2))

    def test_general_ambient(self):
        # N = span{(4,0)} inside M = 2Z^2: closure is span{(2,0)}, not (1,0)
        m = lat([[2, 0], [0, 2]], 2)
        cl = saturate(lat([[4, 0]], 2), m)
        assert int_rows(cl) == [[2, 0]]

    def test_poly_ring(self):
        x = F2.element((0, 1))
        n = IntLattice.from_rows(F2, 2, [[x, F2.zero()]])
        cl = saturate(n, IntLattice.full(F2, 2))
        assert cl.basis == ((F2.one(), F2.zero()),)
        # pivot denominator: x * (1,0) lies in N
        assert n.contains([x, F2.zero()])


class TestClosureImage:
    def test_identity(self):
        t = lat([[2, 2]], 2)
        lhs, rhs = closure_image(Matrix.identity(ZZ, 2), t)
        assert lhs == rhs

    def test_projection(self):
        f = Matrix.from_rows(ZZ, [[1], [0]])  # (a, b) -> a
        lhs, rhs = closure_image(f, lat([[2, 2]], 2))
        assert int_rows(lhs) == [[1]]
        assert lhs == rhs

    def test_zero_map(self):
        f = Matrix.zeros(ZZ, 2, 2)
        lhs, rhs = closure_image(f, lat([[1, 1]], 2))
        assert lhs.rank == 0 and rhs.rank == 0

    def test_containment_random(self):
        rng = random.Random(5)
        for _ in range(40):
            t = random_lattice(rng, 3)
            f = Matrix.from_rows(ZZ, [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
            lhs, rhs = closure_image(f, t)
            assert lhs.is_sublattice_of(rhs)


class TestSaturatedSum:
    def test_axes(self):
        l, r = saturated_sum(lat([[2, 0]], 2), lat([[0, 3]], 2), full(2))
        assert l == r == full(2)

    def test_zero_summand(self):
        n1 = lat([[2, 0]], 2)
        l, r = saturated_sum(n1, IntLattice.zero(ZZ, 2), full(2))
        assert l == r == saturate(n1, full(2))

    def test_skew_lines(self):
        l, r = saturated_sum(lat([[1, 1]], 2), lat([[2, -2]], 2), full(2))
        assert l == r == full(2)

    def test_overlapping_rejected(self):
        with pytest.raises(DomainError):
            saturated_sum(lat([[1, 0]], 2), lat([[2, 0]], 2), full(2))


class TestRankSequence:
    def test_u_zero(self):
        v = lat([[2, 0], [0, 3]], 2)
        assert rank_sequence(IntLattice.zero(ZZ, 2), v, full(2)) == (0, 2, 2)

    def test_u_equals_v(self):
        v = lat([[2, 0], [0, 3]], 2)
        assert rank_sequence(v, v, full(2)) == (2, 2, 0)

    def test_example(self):
        u = lat([[2, 0]], 2)
        v = lat([[2, 0], [0, 3]], 2)
        assert rank_sequence(u, v, full(2)) == (1, 2, 1)

    def test_inclusion_validated(self):
        with pytest.raises(DomainError):
            rank_sequence(lat([[1, 0]], 2), lat([[0, 1]], 2), full(2))

    def test_additivity_random_chains(self):
        rng = random.Random(23)
        for _ in range(60):
            v = random_lattice(rng, 4)
            rows = []
            for _ in range(rng.randint(0, 3)):
                row = [ZZ.zero()] * 4
                for brow in v.basis:
                    c = ZZ.element(rng.randint(-3, 3))
                    row = [a + c * b for a, b in zip(row, brow)]
                rows.append(row)
            u = IntLattice.from_rows(ZZ, 4, rows)
            assert u.is_sublattice_of(v)
            r_u, r_v, r_q = rank_sequence(u, v, full(4))
            assert r_v == r_u + r_q


class TestSocleClosureCheck:
    def test_reports(self):
        rep = socle_closure_check(lat([[1, 0], [0, 1]], 2), full(2))
        assert rep.passed
        rep = socle_closure_check(IntLattice.zero(ZZ, 2), full(2))
        assert rep.passed
        rep = socle_closure_check(lat([[2, 0]], 2), full(2))
        assert rep.passed
        assert [c.name for c in rep.checks] == [
            "socle_of_submodule_trivial", "socle_commutes_with_closure",
            "no_essential_socle_unless_semisimple"]


class TestClosureProperties:
    def test_extensive_idempotent_random(self):
        rng = random.Random(31)
        amb = full(4)
        for _ in range(80):
            n = random_lattice(rng)
            cl = saturate(n, amb)
            assert n.is_sublattice_of(cl)
            assert cl.rank == n.rank
            assert saturate(cl, amb) == cl

    def test_monotone_random(self):
        rng = random.Random(37)
        amb = full(4)
        for _ in range(60):
            n2 = random_lattice(rng)
            # a sublattice of n2: random integer combinations of its basis
            rows = []
            for _ in range(rng.randint(0, 3)):
                row = [ZZ.zero()] * 4
                for brow in n2.basis:
                    c = ZZ.element(rng.randint(-2, 2))
                    row = [a + c * b for a, b in zip(row, brow)]
                rows.append(row)
            n1 = IntLattice.from_rows(ZZ, 4, rows)
            assert n1.is_sublattice_of(n2)
            assert saturate(n1, amb).is_sublattice_of(saturate(n2, amb))

    def test_membership_characterization(self):
        rng = random.Random(41)
        amb = full(4)
        for _ in range(40):
            n = random_lattice(rng)
            cl = saturate(n, amb)
            for row in cl.basis:
                r = rational_span_coefficient(n.basis, row)
                assert r is not None and r >= 1
                assert n.contains([ZZ.element(r * e.payload) for e in row])
            # and nothing outside the rational span ever saturates in
            probe = [rng.randint(-4, 4) for _ in range(4)]
            if rational_span_coefficient(n.basis, probe) is None:
                assert not cl.contains(probe)
