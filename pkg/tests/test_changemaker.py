import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cmtangle import linalg
from cmtangle.changemaker import (ChangemakerError, brute_force_irreducible, build_cm_lattice,
                                  enumerate_sigma, fractional_basis, half_integer_lattice,
                                  is_changemaker, is_indecomposable, is_irreducible_LF,
                                  lattice_basis, realize_subset, subset_sum_oracle)
from cmtangle.contfrac import neg_cf_expand, split_n_r

from oracles import is_changemaker_oracle, sigma_oracle, w_vectors


def vec(spec, f=(), e=()):
    return spec.vector(f, e)


def test_is_changemaker_examples():
    assert is_changemaker((1, 2, 4))
    assert is_changemaker(())
    assert not is_changemaker((1, 3))
    assert not is_changemaker((2,))


def test_is_changemaker_rejects_unsorted_and_negative():
    with pytest.raises(ChangemakerError):
        is_changemaker((2, 1))
    with pytest.raises(ChangemakerError):
        is_changemaker((-1, 1))


def test_brown_equivalence_small():
    # the full t <= 8, entries <= 10 sweep lives in the acceptance suite
    for t in range(5):
        for sigma in itertools.combinations_with_replacement(range(0, 7), t):
            assert is_changemaker(sigma) == is_changemaker_oracle(sigma)
            assert subset_sum_oracle(sigma) == is_changemaker_oracle(sigma)


def test_realize_subset():
    assert realize_subset((1, 2, 4), 3) == {1, 2}
    assert realize_subset((1, 2, 4), 0) == frozenset()
    assert realize_subset((1, 2, 4), 7) == {1, 2, 3}
    with pytest.raises(ChangemakerError):
        realize_subset((1, 2, 4), 8)


@given(st.lists(st.integers(1, 6), max_size=7).map(sorted), st.data())
def test_realize_subset_sums(sigma, data):
    if not is_changemaker(sigma):
        return
    k = data.draw(st.integers(0, sum(sigma)))
    assert sum(sigma[i - 1] for i in realize_subset(sigma, k)) == k


def test_enumerate_sigma_examples():
    assert enumerate_sigma(2) == [(1,)]
    assert enumerate_sigma(5) == [(1, 1, 1, 1)]
    assert (1, 2, 4) in enumerate_sigma(22)
    assert enumerate_sigma(1) == [()]


def test_enumerate_sigma_matches_oracle():
    for n in range(1, 27):
        tails = enumerate_sigma(n)
        assert tails == sorted(tails)
        expected = sorted(s for t in range(n) for s in sigma_oracle(n, t))
        assert tails == expected
        for t in range(6):
            assert enumerate_sigma(n, t) == [s for s in tails if len(s) == t]


def test_build_107_5():
    spec = build_cm_lattice(Fraction(107, 5), (1, 2, 4))
    assert spec.dim == 7
    assert spec.w == (
        vec(spec, (1, 2, 4), (1, 0, 0, 0)),
        vec(spec, (), (-1, 1, 0, 0)),
        vec(spec, (), (0, -1, 1, 1)),
    )
    assert spec.rank == 4


def test_build_43_2():
    spec = build_cm_lattice(Fraction(43, 2), (1, 2, 4))
    assert spec.dim == 5
    assert spec.w == (vec(spec, (1, 2, 4), (1, 0)), vec(spec, (), (-1, 1)))
    assert half_integer_lattice(build_cm_lattice(Fraction(107, 5), (1, 2, 4))) == spec


def test_build_9_2():
    spec = build_cm_lattice(Fraction(9, 2), (1, 1, 1, 1))
    assert spec.dim == 6
    assert spec.gram_w() == [[5, -1], [-1, 2]]
    assert linalg.int_det(spec.gram_w()) == 9


def test_build_errors():
    with pytest.raises(ChangemakerError):
        build_cm_lattice(Fraction(107, 5), (1, 2, 3))
    with pytest.raises(ChangemakerError):
        build_cm_lattice(Fraction(1, 2), ())
    with pytest.raises(ChangemakerError):
        build_cm_lattice(Fraction(5), (1, 1, 1, 1))
    with pytest.raises(ChangemakerError):
        build_cm_lattice(Fraction(11, 2), (1, 3))


def all_specs(limit=30, qmax=None):
    for q in range(2, (qmax or limit) + 1):
        for p in range(q + 1, limit * q + 1):
            x = Fraction(p, q)
            if x.denominator != q:
                continue
            n, _ = split_n_r(x)
            for sigma in enumerate_sigma(n):
                yield build_cm_lattice(x, sigma)


def test_gram_law_grid():
    count = 0
    for spec in all_specs(limit=30, qmax=8):
        a = neg_cf_expand(spec.pq)
        g = spec.gram_w()
        for i in range(len(a)):
            for j in range(len(a)):
                want = a[i] if i == j else (-1 if abs(i - j) == 1 else 0)
                assert g[i][j] == want
        assert linalg.int_det(g) == spec.p
        assert [list(w) for w in spec.w] == [w.tolist() for w in w_vectors(spec.pq, spec.sigma)]
        count += 1
    assert count > 1000


def test_fractional_basis_107_5():
    spec = build_cm_lattice(Fraction(107, 5), (1, 2, 4))
    basis = fractional_basis(spec)
    assert basis.v == (vec(spec, (), (1, 1, 1, 0)), vec(spec, (), (0, 0, -1, 1)))
    assert basis.m == 1


def test_fractional_basis_half_integer():
    for n in range(2, 12):
        for sigma in enumerate_sigma(n):
            spec = build_cm_lattice(Fraction(2 * n - 1, 2), sigma)
            basis = fractional_basis(spec)
            assert basis.v == (vec(spec, (), (1, 1)),)
            assert all(linalg.dot(basis.v[0], w) == 0 for w in spec.w[1:])


def test_fractional_basis_two_thirds():
    spec = build_cm_lattice(Fraction(3 * 5 - 2, 3), (1, 1, 1, 1))
    assert neg_cf_expand(spec.pq)[1:] == [2, 2]
    assert fractional_basis(spec).v == (vec(spec, (), (1, 1, 1)),)


def test_fractional_gram_law():
    for spec in all_specs(limit=12, qmax=9):
        basis = fractional_basis(spec)
        g = linalg.gram(basis.v)
        for i in range(len(g)):
            for j in range(len(g)):
                if abs(i - j) == 1:
                    assert g[i][j] == -1
                elif i != j:
                    assert g[i][j] == 0
        assert basis.m + 1 == spec.s + 1 - spec.l
        assert basis.v[0][spec.e(0)] == 1
        for k, v in enumerate(basis.v):
            for w in spec.w[1:]:
                assert linalg.dot(v, w) == 0
            if k >= 1:
                assert linalg.dot(v, spec.w[0]) == 0
                assert spec.contains(v)


def test_indecomposable():
    assert is_indecomposable(build_cm_lattice(Fraction(107, 5), (1, 2, 4)))
    assert not is_indecomposable(build_cm_lattice(Fraction(9, 2), (0, 1, 1, 1, 1)))
    assert is_indecomposable(build_cm_lattice(Fraction(3, 2), (1,)))


def test_indecomposable_vs_norm_one_search():
    for q in range(2, 5):
        for p in range(q + 1, 6 * q):
            x = Fraction(p, q)
            if x.denominator != q:
                continue
            n, _ = split_n_r(x)
            for t in range(4):
                for sigma in itertools.combinations_with_replacement(range(0, 3), t):
                    if 1 + sum(s * s for s in sigma) != n or not is_changemaker(sigma):
                        continue
                    spec = build_cm_lattice(x, sigma)
                    if spec.dim > 8:
                        continue
                    has_unit = any(spec.contains(u) for u in linalg.vectors_of_norm(spec.dim, 1))
                    assert is_indecomposable(spec) == (not has_unit)


def test_irreducible_LF_examples():
    spec = build_cm_lattice(Fraction(107, 5), (1, 2, 4))
    basis = fractional_basis(spec)
    v0, v1 = basis.v
    assert is_irreducible_LF(v0, basis)
    assert is_irreducible_LF(linalg.add(v0, v1), basis)
    assert not is_irreducible_LF(linalg.scale(2, v0), basis)
    with pytest.raises(ChangemakerError):
        is_irreducible_LF(vec(spec, (1,)), basis)


def test_brute_force_irreducible_examples():
    spec = build_cm_lattice(Fraction(107, 5), (1, 2, 4))
    basis = lattice_basis(spec)
    frac = fractional_basis(spec)
    v0 = frac.v[0]
    assert brute_force_irreducible(v0, frac.v)
    assert not brute_force_irreducible((0,) * 7, basis)
    # -f3 + f1 + f2 + v0 and -f_k + f_j patterns with equal entries
    z = linalg.add(vec(spec, (1, 1, -1)), v0)
    assert spec.contains(z)
    assert brute_force_irreducible(z, basis)
    spec9 = build_cm_lattice(Fraction(9, 2), (1, 1, 1, 1))
    x = vec(spec9, (-1, 1))
    assert spec9.contains(x)
    assert brute_force_irreducible(x, lattice_basis(spec9))
    assert not brute_force_irreducible(linalg.scale(2, x), lattice_basis(spec9))


def test_lattice_basis_spans_lattice():
    for spec in all_specs(limit=6, qmax=5):
        basis = lattice_basis(spec)
        assert len(basis) == spec.rank
        assert all(spec.contains(b) for b in basis)
        # det(Gram) of an integral basis of <w>^perp equals det(Gram(w))
        assert linalg.int_det(linalg.gram(basis)) == spec.p


def test_fractional_irreducible_vs_oracle():
    seen = 0
    done = set()
    for spec in all_specs(limit=5, qmax=7):
        if spec.s > 4 or spec.pq in done:
            continue
        done.add(spec.pq)
        basis = fractional_basis(spec)
        for coeffs in itertools.product(range(-2, 3), repeat=len(basis.v)):
            if not any(coeffs):
                continue
            x = linalg.vsum((linalg.scale(c, v) for c, v in zip(coeffs, basis.v)), spec.dim)
            if linalg.norm(x) > 12:
                continue
            # L_F lives on the e-coordinates; drop the zero f-block for speed
            xe = spec.e_part(x)
            ve = [spec.e_part(v) for v in basis.v]
            assert is_irreducible_LF(x, basis) == brute_force_irreducible(xe, ve)
            seen += 1
    assert seen > 100


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(3, 120), st.data())
def test_spec_invariants_random(q, p, data):
    x = Fraction(p, q)
    if x.denominator != q or x <= 1:
        return
    n, r = split_n_r(x)
    tails = enumerate_sigma(n)
    if not tails:
        return
    spec = build_cm_lattice(x, data.draw(st.sampled_from(tails)))
    assert spec.r == r
    assert linalg.norm(spec.w[0]) == n
    assert linalg.int_det(spec.gram_w()) == p
    assert spec.rank == spec.t + spec.s - spec.l
    for cls in spec.coordinate_classes:
        for c in cls[1:]:
            assert [w[c] for w in spec.w] == [w[cls[0]] for w in spec.w]
