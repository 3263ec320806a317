"""Acceptance suite: one test per criterion, each printing a PASS line.

All checks are exact (no numeric tolerances anywhere); run with
``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.
"""

import json
import os
import random
import time
from functools import lru_cache

from bruteforce import determinantal_divisor, bareiss_det
from essentia import essential, isotypes, oracle, pid
from essentia.closure import (IntLattice, closure_image, rank_sequence, saturate,
                              saturated_sum)
from essentia.cli import main as cli_main
from essentia.fgmod import primary_module
from essentia.pid import ZZ
from essentia.smith import Matrix, smith_normal_form

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@lru_cache(maxsize=None)
def lattice(module):
    return oracle.enumerate_submodules(module)


def passline(number, label, t0):
    print(f"ACCEPTANCE {number}: PASS ({time.time() - t0:.1f}s) {label}")


def test_criterion_01_criterion_oracle_equivalence():
    t0 = time.time()
    types = isotypes.integer_types(128)
    assert len(types) == 247  # every isomorphism type of order 1..128
    for m in types:
        lat = lattice(m)
        assert essential.has_proper_essential(m).exists == any(lat.proper_essential), str(m)
    passline(1, f"criterion == exhaustive lattice search on {len(types)} types of order <= 128", t0)


def test_criterion_02_witness_soundness():
    t0 = time.time()
    checked = 0
    for m in isotypes.integer_types(128):
        verdict = essential.has_proper_essential(m)
        if verdict.exists:
            assert essential.is_proper_essential(m, verdict.witness), str(m)
            checked += 1
    passline(2, f"witnesses pass the definitional sweep on {checked} types", t0)


def test_criterion_03_semisimplicity_equivalences():
    t0 = time.time()
    types = isotypes.integer_types(64)
    for m in types:
        rep = oracle.verify_semisimplicity_equivalences(m, lattice(m))
        assert rep.passed, (str(m), rep.checks[0].detail)
    passline(3, f"four-way equivalence holds on {len(types)} types of order <= 64", t0)


def test_criterion_04_socle_is_intersection_of_essentials():
    t0 = time.time()
    types = isotypes.integer_types(128)
    for m in types:
        rep = oracle.verify_socle_intersection(m, lattice(m))
        assert rep.passed, (str(m), rep.checks[0].detail)
    passline(4, f"socle = intersection of essentials (top included) on {len(types)} types", t0)


def test_criterion_05_primary_criterion():
    t0 = time.time()
    pairs = 0
    for m in isotypes.integer_types(128):
        if m.cardinality() == 1:
            continue
        for p, _ in pid.factor(ZZ.element(m.cardinality())).factors:
            by_criterion = essential.primary_criterion(m, p)
            psq = p * p
            by_factors = any(psq.divides(a) for a in m.factors)
            part = primary_module(m, p)
            by_oracle = any(lattice(part).proper_essential)
            assert by_criterion == by_factors == by_oracle, (str(m), str(p))
            pairs += 1
    passline(5, f"Ann-chain criterion == p^2-divisibility == oracle on {pairs} (type, prime) pairs", t0)


def test_criterion_06_socle_essentiality_theorem():
    t0 = time.time()
    types = isotypes.integer_types(128)
    for m in types:
        rep = oracle.verify_socle_essentiality(m, lattice(m))
        assert rep.passed, str(m)
    passline(6, f"simple-containment and essential-socle criterion on {len(types)} types", t0)


def test_criterion_07_direct_sum_law():
    t0 = time.time()
    rng = random.Random(20260811)
    types = isotypes.integer_types(128)
    done = 0
    while done < 200:
        a, b = rng.choice(types), rng.choice(types)
        if a.cardinality() * b.cardinality() > 256:
            continue
        d = a.direct_sum(b)
        assert essential.has_proper_essential(d).exists == (
            essential.has_proper_essential(a).exists or essential.has_proper_essential(b).exists), (str(a), str(b))
        done += 1
    passline(7, "direct-sum existence law on 200 random pairs (seed 20260811)", t0)


def test_criterion_08_smith_normal_form():
    t0 = time.time()
    rng = random.Random(20260812)
    for _ in range(500):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        a = Matrix.from_rows(ZZ, [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        snf = smith_normal_form(a)
        assert (snf.U @ a @ snf.V).entries == snf.S.entries
        assert bareiss_det(ZZ, snf.U.entries).is_unit()
        assert bareiss_det(ZZ, snf.V.entries).is_unit()
        diag = snf.S.diagonal()
        nonzero = [d for d in diag if not d.is_zero()]
        assert all(d.is_unit_normal() for d in diag)
        assert all(d.is_zero() for d in diag[len(nonzero):])
        for i in range(len(nonzero) - 1):
            assert nonzero[i].divides(nonzero[i + 1])
        for k in range(1, min(rows, cols) + 1):
            assert determinantal_divisor(a, k) == determinantal_divisor(snf.S, k)
    passline(8, "500 random integer matrices up to 5x5: transforms, chain, determinantal divisors", t0)


def test_criterion_09_closure_calculus():
    t0 = time.time()
    rng = random.Random(20260813)
    amb = IntLattice.full(ZZ, 4)

    def rand_lattice(max_rows=4):
        rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(rng.randint(0, max_rows))]
        return IntLattice.from_rows(ZZ, 4, rows)

    def sublattice_of(v):
        rows = []
        for _ in range(rng.randint(0, 3)):
            row = [ZZ.zero()] * 4
            for brow in v.basis:
                c = ZZ.element(rng.randint(-2, 2))
                row = [x + c * y for x, y in zip(row, brow)]
            rows.append(row)
        return IntLattice.from_rows(ZZ, 4, rows)

    for _ in range(300):
        n = rand_lattice()
        cl = saturate(n, amb)
        assert n.is_sublattice_of(cl)                      # extensiveness
        assert saturate(cl, amb) == cl                     # idempotence
        n1 = sublattice_of(n)
        assert saturate(n1, amb).is_sublattice_of(cl)      # monotonicity
        lhs, rhs = closure_image(
            Matrix.from_rows(ZZ, [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]), n)
        assert lhs.is_sublattice_of(rhs)                   # image containment
        r_u, r_v, r_q = rank_sequence(n1, n, amb)
        assert r_v == r_u + r_q                            # rank additivity
        d1 = rand_lattice(2)
        d2 = rand_lattice(2)
        if d1.intersect(d2).rank == 0:
            s_lhs, s_rhs = saturated_sum(d1, d2, amb)
            assert s_lhs == s_rhs                          # direct-sum closure law
    passline(9, "closure calculus on 300 random rank-4 cases (seed 20260813)", t0)


def test_criterion_10_polynomial_instantiation():
    t0 = time.time()
    total = 0
    for p in (2, 3):
        for m in isotypes.polynomial_types(p, p**4):
            lat = lattice(m)
            verdict = essential.has_proper_essential(m)
            assert verdict.exists == any(lat.proper_essential), str(m)
            if verdict.exists:
                assert essential.is_proper_essential(m, verdict.witness), str(m)
            total += 1
    passline(10, f"criterion + witness soundness on {total} F_p[x]-module types, p in {{2,3}}", t0)


def test_criterion_11_cli_determinism(capsys):
    t0 = time.time()
    fixtures = [
        ("classify", "module_z4"), ("classify", "module_poly"), ("classify", "module_mixed"),
        ("witness", "module_z4"),
        ("smith", "matrix_3x3"), ("smith", "matrix_poly"),
        ("saturate", "lattice_rank4"),
    ]
    for command, fixture in fixtures:
        with open(os.path.join(GOLDEN, f"{command}_{fixture}.golden"), encoding="utf-8") as fh:
            golden = fh.read()
        for _ in range(2):
            rc = cli_main([command, os.path.join(GOLDEN, f"{fixture}.json"), "--json"])
            out = capsys.readouterr().out
            assert rc == 0
            assert out == golden, (command, fixture)
    with capsys.disabled():
        passline(11, f"byte-identical CLI output on {len(fixtures)} golden fixtures", t0)
