import random

import pytest

from qtdelta import torus
from qtdelta.groups import (
    Class2Presentation,
    add_cyclic,
    central_product,
    commutator_form,
    heisenberg,
    structure_report,
)
from qtdelta.lattice import Sublattice

from oracles import standard_j


class TestPresentation:
    def test_heisenberg_rank_one(self):
        p = heisenberg(1)
        assert p.n == 2 and p.s == 1
        assert p.commutator(0, 1) == (1,)
        assert p.commutator(1, 0) == (-1,)

    def test_heisenberg_rank_two_table(self):
        p = heisenberg(2)
        assert p.n == 4
        want = tuple(map(tuple, standard_j(4)))
        assert commutator_form(p).forms == (want,)

    def test_invalid_rank(self):
        with pytest.raises(ValueError):
            heisenberg(0)

    def test_direct_product_with_cyclic(self):
        p = add_cyclic(heisenberg(1))
        assert p.n == 3
        form = commutator_form(p)
        assert all(form.forms[0][2][j] == 0 for j in range(3))
        assert all(form.forms[0][i][2] == 0 for i in range(3))

    def test_antisymmetric_fold(self):
        p = Class2Presentation(("a", "b"), ("z",), (((1, 0, (-2,))),))
        assert p.commutator(0, 1) == (2,)

    def test_self_commutator_rejected(self):
        with pytest.raises(ValueError):
            Class2Presentation(("a",), ("z",), ((0, 0, (1,)),))

    def test_conflicting_entries_rejected(self):
        with pytest.raises(ValueError):
            Class2Presentation(("a", "b"), ("z",),
                               ((0, 1, (1,)), (1, 0, (1,))))

    def test_central_product_distinct_centres(self):
        p = central_product(heisenberg(1), heisenberg(1))
        assert p.n == 4 and p.s == 2
        assert p.commutator(0, 1) == (1, 0)
        assert p.commutator(2, 3) == (0, 1)

    def test_central_product_identified_centres(self):
        p = central_product(heisenberg(1), heisenberg(1),
                            identify_centres=True)
        assert p.n == 4 and p.s == 1
        assert p.commutator(0, 1) == (1,)
        assert p.commutator(2, 3) == (1,)


class TestStructureReport:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_heisenberg_single_block(self, m):
        report = structure_report(heisenberg(m), seed=0)
        assert report.decomposed
        assert report.cyclic_rank == 0
        assert [b.rank for b in report.heisenberg_blocks] == [m]
        assert report.heisenberg_blocks[0].line == (1,)

    def test_heisenberg_times_cyclic(self):
        report = structure_report(add_cyclic(heisenberg(1)), seed=0)
        assert report.decomposed
        assert report.cyclic_rank == 1
        assert [b.rank for b in report.heisenberg_blocks] == [1]

    def test_abelian_presentation(self):
        p = Class2Presentation(("a", "b", "c"), ("z",), ())
        report = structure_report(p, seed=0)
        assert report.decomposed
        assert report.heisenberg_blocks == ()
        assert report.cyclic_rank == 3

    def test_rank_accounting_invariant(self):
        rng = random.Random(5)
        for _ in range(10):
            parts = [heisenberg(rng.randint(1, 2))
                     for _ in range(rng.randint(1, 3))]
            pres = parts[0]
            for extra in parts[1:]:
                pres = central_product(pres, extra)
            for _ in range(rng.randint(0, 2)):
                pres = add_cyclic(pres)
            report = structure_report(pres, seed=1)
            assert report.decomposed
            assert 2 * sum(b.rank for b in report.heisenberg_blocks) \
                + report.cyclic_rank == pres.n

    def test_central_product_recovers_factors(self):
        pres = central_product(central_product(heisenberg(1), heisenberg(2)),
                               heisenberg(1))
        report = structure_report(pres, seed=0)
        assert report.decomposed
        assert sorted(b.rank for b in report.heisenberg_blocks) == [1, 1, 2]
        lines = {b.line for b in report.heisenberg_blocks}
        assert lines == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
        audit = report.diagnostics["theorem42"]
        assert audit["passed"]

    def test_identified_centres_merge(self):
        pres = central_product(heisenberg(1), heisenberg(1),
                               identify_centres=True)
        report = structure_report(pres, seed=0)
        assert report.decomposed
        assert [b.rank for b in report.heisenberg_blocks] == [2]

    def test_twin_fixture_fails_condition_four(self):
        pres = central_product(heisenberg(1), heisenberg(1),
                               identify_centres=True)
        form = commutator_form(pres)
        a1 = Sublattice.from_rows(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
        a2 = Sublattice.from_rows(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
        audit = torus.verify_theorem42(form, [a1, a2])
        assert audit.pairwise_commute
        assert audit.trivial_centres
        assert audit.rank_one_images
        assert not audit.distinct_image_lines
        assert not audit.passed

    def test_lifted_bases_project_onto_blocks(self):
        pres = add_cyclic(central_product(heisenberg(1), heisenberg(1)))
        report = structure_report(pres, seed=0)
        assert report.decomposed
        proj = report.diagnostics["quotient_projection"]
        for block in report.heisenberg_blocks:
            for lifted, quotient_row in zip(block.lifted_basis, block.basis):
                image = tuple(sum(p[j] * lifted[j] for j in range(pres.n))
                              for p in proj)
                assert image == tuple(quotient_row)
