import pytest

from bruteforce import brute_proper_essentials, subset_submodules
from essentia import _lattice_py, kernel, oracle
from essentia.fgmod import FGModule
from essentia.pid import ZZ, polynomial_ring

F2 = polynomial_ring(2)
F3 = polynomial_ring(3)

try:
    from essentia import _lattice as _compiled
except ImportError:
    _compiled = None


def zmod(*orders):
    return FGModule.from_orders(ZZ, orders)


SAMPLE_MODULES = [
    zmod(),
    zmod(2),
    zmod(12),
    zmod(2, 4),
    zmod(2, 2, 2),
    zmod(3, 9),
    zmod(4, 8),
    zmod(30),
    FGModule(F2, 0, (F2.element((0, 0, 1)),)),               # F2[x]/(x^2)
    FGModule(F2, 0, (F2.element((0, 1)), F2.element((0, 0, 1)))),
    FGModule(F3, 0, (F3.element((0, 1)), F3.element((0, 1)))),
    FGModule(F2, 0, (F2.element((1, 1, 1)),)),               # irreducible quadratic
]


class TestBackendEquivalence:
    @pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
    def test_backends_identical(self):
        for m in SAMPLE_MODULES:
            t = oracle.element_table(m)
            mc = _compiled.enumerate_masks(t.add, t.actions)
            mp = _lattice_py.enumerate_masks(t.add, t.actions)
            assert mc == mp, str(m)
            assert _compiled.compute_flags(mc, t.add) == _lattice_py.compute_flags(mp, t.add), str(m)

    def test_pure_backend_selectable(self):
        t = oracle.element_table(zmod(2, 4))
        data = kernel.build_lattice(t.add, t.actions, backend=_lattice_py)
        assert len(data.masks) == 8


class TestAgainstSubsetEnumeration:
    def test_tiny_lattices_match_raw_subset_filtering(self):
        for m in (zmod(8), zmod(16), zmod(2, 4), zmod(2, 2, 2), zmod(9), zmod(12),
                  FGModule(F2, 0, (F2.element((0, 0, 1)),)),
                  FGModule(F2, 0, (F2.element((0, 1)), F2.element((0, 1))))):
            expected = subset_submodules(m)
            lat = oracle.enumerate_submodules(m)
            assert list(lat.masks) == expected, str(m)

    def test_tiny_proper_essentials_match_definition(self):
        for m in (zmod(8), zmod(16), zmod(2, 4), zmod(12), zmod(2, 2, 2)):
            masks = subset_submodules(m)
            expected = set(brute_proper_essentials(masks))
            lat = oracle.enumerate_submodules(m)
            got = {mask for mask, f in zip(lat.masks, lat.proper_essential) if f}
            assert got == expected, str(m)


class TestLatticeCounts:
    def test_known_counts(self):
        assert len(oracle.enumerate_submodules(zmod(5))) == 2
        assert len(oracle.enumerate_submodules(zmod(2, 2))) == 5
        assert len(oracle.enumerate_submodules(zmod(3, 3))) == 6
        assert len(oracle.enumerate_submodules(zmod(4))) == 3
        assert len(oracle.enumerate_submodules(zmod(2, 4))) == 8
        # number of subgroups of Z/n = number of divisors
        assert len(oracle.enumerate_submodules(zmod(36))) == 9

    def test_closure_property(self):
        for m in (zmod(12), zmod(2, 4), zmod(2, 2, 2), zmod(3, 9),
                  FGModule(F2, 0, (F2.element((0, 0, 1)), F2.element((0, 0, 1))))):
            lat = oracle.enumerate_submodules(m)
            assert lat.is_closed_under_meet_join(), str(m)


class TestScalarActionInvariance:
    def test_redundant_scalars_change_nothing(self):
        # the lattice over R and over R/Ann coincides: enumerating with
        # extra scalar actions must give the identical answer
        cases = [
            (zmod(12), [5, 7, 11]),
            (zmod(2, 4), [3]),
            (FGModule(F2, 0, (F2.element((0, 0, 1)),)), [(1, 1), (1, 0, 1)]),
        ]
        for m, extras in cases:
            plain = oracle.enumerate_submodules(m)
            enriched = oracle.enumerate_submodules(m, scalars=extras)
            assert plain.masks == enriched.masks
            assert plain.data == enriched.data


class TestMaskHelpers:
    def test_roundtrip(self):
        assert kernel.indices_from_mask(kernel.mask_from_indices([0, 3, 5])) == [0, 3, 5]

    def test_join(self):
        t = oracle.element_table(zmod(4, 2))
        rows = t.add_rows
        a = kernel.mask_from_indices([0, 2])
        b = kernel.mask_from_indices([0, 4])
        j = kernel.join_masks(a, b, rows)
        assert j == kernel.mask_from_indices([0, 2, 4, 6])
