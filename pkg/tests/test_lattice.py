import random
from fractions import Fraction

import pytest

from qtdelta.lattice import (
    Sublattice,
    Subspace,
    commensurable,
    hnf,
    kernel_lattice,
    lattice_intersection,
    matrix_rank,
    null_space_int,
    saturate,
    solve_left,
    subspace_image,
    subspace_intersection,
    subspace_kernel,
    subspace_sum,
    subspace_to_lattice,
    vec_primitive,
)

from oracles import det_fraction, is_row_hnf, mat_mul, saturation_points_bruteforce


def inverse_times(U, H):
    n = len(U)
    inv = [[Fraction(0)] * n for _ in range(n)]
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0)
                                         for j in range(n)]
           for i, row in enumerate(U)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        f = 1 / aug[c][c]
        aug[c] = [x * f for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                g = aug[i][c]
                aug[i] = [x - g * y for x, y in zip(aug[i], aug[c])]
    inv = [row[n:] for row in aug]
    return mat_mul(inv, H)


class TestHnf:
    def test_identity(self):
        eye = ((1, 0), (0, 1))
        assert hnf(eye) == (eye, eye)

    def test_zero(self):
        z = ((0, 0), (0, 0))
        H, U = hnf(z)
        assert H == z
        assert U == ((1, 0), (0, 1))

    def test_frozen_example(self):
        # oracle-computed: lattice spanned by (2,4),(1,3) has HNF
        # [[1,1],[0,2]] (pivots positive, entry above reduced, index 2)
        H, U = hnf(((2, 4), (1, 3)))
        assert H == ((1, 1), (0, 2))
        assert abs(det_fraction(U)) == 1
        assert mat_mul(U, ((2, 4), (1, 3))) == H

    @pytest.mark.parametrize("seed", range(25))
    def test_random_roundtrip(self, seed):
        rng = random.Random(seed)
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = tuple(tuple(rng.randint(-6, 6) for _ in range(n))
                  for _ in range(m))
        H, U = hnf(M)
        assert is_row_hnf(H)
        assert abs(det_fraction(U)) == 1
        assert mat_mul(U, M) == H
        # round trip: U^-1 H = M exactly
        assert inverse_times(U, H) == tuple(tuple(Fraction(x) for x in row)
                                            for row in M)


class TestSublattice:
    def test_canonical_equality(self):
        a = Sublattice.from_rows(2, [(1, 3), (2, 4)])
        b = Sublattice.from_rows(2, [(2, 4), (1, 3), (3, 7)])
        assert a == b and hash(a) == hash(b)

    def test_membership(self):
        lat = Sublattice.from_rows(2, [(2, 0), (0, 3)])
        assert lat.contains_vector((4, 3))
        assert not lat.contains_vector((1, 0))
        assert not lat.contains_vector((Fraction(1, 2), 0))

    def test_saturate_index_two(self):
        lat = Sublattice.from_rows(2, [(2, 0)])
        assert saturate(lat).basis == ((1, 0),)

    def test_saturate_idempotent(self):
        lat = Sublattice.from_rows(3, [(2, 4, 6), (0, 0, 4)])
        once = saturate(lat)
        assert saturate(once) == once

    def test_saturate_full_rank_oracle(self):
        # (2,2),(0,4) has full rank in Z^2, so its saturation is all of Z^2;
        # frozen from the brute-force enumeration oracle.
        basis = ((2, 2), (0, 4))
        expected = saturation_points_bruteforce(basis, 2, box=2)
        sat = saturate(Sublattice.from_rows(2, basis))
        assert sat == Sublattice.full(2)
        for x in range(-2, 3):
            for y in range(-2, 3):
                assert sat.contains_vector((x, y)) == ((x, y) in expected)

    @pytest.mark.parametrize("seed", range(10))
    def test_saturate_matches_enumeration(self, seed):
        rng = random.Random(100 + seed)
        n = rng.randint(1, 3)
        rows = [tuple(rng.randint(-2, 2) for _ in range(n))
                for _ in range(rng.randint(1, n))]
        lat = Sublattice.from_rows(n, rows)
        sat = saturate(lat)
        expected = saturation_points_bruteforce(lat.basis, n, box=2)
        for point in expected:
            assert sat.contains_vector(point)
        assert sat.rank == lat.rank

    def test_saturate_monotone(self):
        lat = Sublattice.from_rows(2, [(2, 4)])
        sat = saturate(lat)
        assert all(sat.contains_vector(row) for row in lat.basis)


class TestCommensurable:
    def test_trivial_scalings(self):
        lat = Sublattice.from_rows(2, [(1, 2), (0, 5)])
        tripled = Sublattice.from_rows(2, [(3, 6), (0, 15)])
        assert commensurable(lat, tripled)

    def test_transverse_lines(self):
        a = Sublattice.from_rows(2, [(1, 0)])
        b = Sublattice.from_rows(2, [(0, 1)])
        assert not commensurable(a, b)

    def test_parallel_lines(self):
        a = Sublattice.from_rows(2, [(2, 4)])
        b = Sublattice.from_rows(2, [(3, 6)])
        assert commensurable(a, b)
        assert saturate(a).basis == ((1, 2),)

    @pytest.mark.parametrize("seed", range(8))
    def test_equivalence_relation(self, seed):
        rng = random.Random(200 + seed)
        n = 3
        lats = [Sublattice.from_rows(
            n, [tuple(rng.randint(-2, 2) for _ in range(n))
                for _ in range(rng.randint(1, 2))]) for _ in range(3)]
        lats = [l for l in lats if l.rank]
        for a in lats:
            assert commensurable(a, a)
            for b in lats:
                assert commensurable(a, b) == commensurable(b, a)
        for a in lats:
            for b in lats:
                for c in lats:
                    if commensurable(a, b) and commensurable(b, c):
                        assert commensurable(a, c)


class TestKernels:
    def test_axis(self):
        assert kernel_lattice([(1, 0)], 2).basis == ((0, 1),)

    def test_diagonal(self):
        assert kernel_lattice([(1, -1)], 2).basis == ((1, 1),)

    def test_rational_row(self):
        assert kernel_lattice([(Fraction(1, 2), Fraction(1, 3))], 2).basis \
            == ((2, -3),)

    def test_zero_map(self):
        assert kernel_lattice([(0, 0, 0)], 3) == Sublattice.full(3)

    @pytest.mark.parametrize("seed", range(10))
    def test_character_kernel_rank(self, seed):
        rng = random.Random(300 + seed)
        n = rng.randint(1, 4)
        chi = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                    for _ in range(n))
        ker = kernel_lattice([chi], n)
        if any(chi):
            assert ker.rank == n - 1
        else:
            assert ker.rank == n
        for row in ker.basis:
            assert sum(c * x for c, x in zip(chi, row)) == 0
        assert saturate(ker) == ker

    def test_lattice_intersection(self):
        a = Sublattice.from_rows(2, [(2, 0)])
        b = Sublattice.from_rows(2, [(3, 0)])
        assert lattice_intersection(a, b).basis == ((6, 0),)
        c = Sublattice.from_rows(2, [(0, 1)])
        assert lattice_intersection(a, c).rank == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_intersection_membership(self, seed):
        rng = random.Random(400 + seed)
        n = 3
        a = Sublattice.from_rows(n, [tuple(rng.randint(-2, 2) for _ in range(n))
                                     for _ in range(2)])
        b = Sublattice.from_rows(n, [tuple(rng.randint(-2, 2) for _ in range(n))
                                     for _ in range(2)])
        inter = lattice_intersection(a, b)
        for row in inter.basis:
            assert a.contains_vector(row) and b.contains_vector(row)
        # small vectors in both lattices lie in the intersection
        for _ in range(20):
            ca = [rng.randint(-2, 2) for _ in range(a.rank)]
            v = tuple(sum(ca[i] * a.basis[i][j] for i in range(a.rank))
                      for j in range(n))
            if b.contains_vector(v):
                assert inter.contains_vector(v)


class TestSubspaces:
    def test_rref_canonical(self):
        s1 = Subspace.from_rows(3, [(1, 2, 3), (2, 4, 6), (0, 0, 1)])
        s2 = Subspace.from_rows(3, [(1, 2, 0), (0, 0, 2)])
        assert s1 == s2 and s1.dim == 2

    def test_sum_intersection(self):
        a = Subspace.from_rows(3, [(1, 0, 0), (0, 1, 0)])
        b = Subspace.from_rows(3, [(0, 1, 0), (0, 0, 1)])
        assert subspace_sum(a, b) == Subspace.full(3)
        assert subspace_intersection(a, b) == Subspace.from_rows(3, [(0, 1, 0)])

    def test_kernel_image(self):
        M = [(1, 0, -1), (0, 1, -1)]
        k = subspace_kernel(M, 3)
        assert k == Subspace.from_rows(3, [(1, 1, 1)])
        img = subspace_image(M)
        assert img == Subspace.full(2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            subspace_sum(Subspace.full(2), Subspace.full(3))

    def test_subspace_to_lattice(self):
        s = Subspace.from_rows(2, [(Fraction(1, 2), Fraction(1, 3))])
        lat = subspace_to_lattice(s)
        assert lat.basis == ((3, 2),)
        assert saturate(lat) == lat


class TestSolveLeft:
    @pytest.mark.parametrize("seed", range(10))
    def test_roundtrip(self, seed):
        rng = random.Random(500 + seed)
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        A = tuple(tuple(rng.randint(-3, 3) for _ in range(n))
                  for _ in range(m))
        x = tuple(rng.randint(-3, 3) for _ in range(m))
        b = tuple(sum(x[i] * A[i][j] for i in range(m)) for j in range(n))
        y = solve_left(A, b)
        assert y is not None
        assert tuple(sum(y[i] * A[i][j] for i in range(m))
                     for j in range(n)) == b

    def test_unsolvable(self):
        assert solve_left(((2, 0),), (1, 0)) is None
        assert solve_left(((1, 0),), (0, 1)) is None


def test_vec_primitive():
    assert vec_primitive((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)
    assert vec_primitive((0, 0)) == (0, 0)
    assert vec_primitive((4, -6)) == (2, -3)


def test_null_space_vs_rank():
    rng = random.Random(77)
    for _ in range(20):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        M = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(m)]
        ns = null_space_int(M, n)
        assert len(ns) == n - matrix_rank(M)
        for v in ns:
            for row in M:
                assert sum(a * b for a, b in zip(row, v)) == 0
