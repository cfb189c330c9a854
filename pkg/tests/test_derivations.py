"""Derivation algebras and the nilpotent-span certificate."""

import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp

from lieactions.catalog import catalog, catalog_entries
from lieactions.derivations import (
    contractibility_obstruction,
    derivation_algebra,
    engel_flag,
    find_non_nilpotent,
    inner_derivations,
    is_nil_family,
)
from lieactions.linalg import RatMatrix


def unit(n, i, j, val=1):
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[i][j] = Fraction(val)
    return RatMatrix(rows)


def test_derivations_of_abelian_are_all_matrices():
    for m in (2, 3):
        assert derivation_algebra(catalog("abelian", m)).dim == m * m


def test_derivations_of_sl2_are_inner():
    g = catalog("sl2")
    der = derivation_algebra(g)
    assert der.dim == 3
    ads = inner_derivations(g)
    for ad in ads:
        assert der.contains(ad)
    # oracle: the ad images span a 3-dimensional space, so equality holds
    flat = sp.Matrix([[float(x) for x in ad.flat()] for ad in ads])
    assert flat.rank() == 3


def test_derivation_defining_identity_holds():
    # every computed basis derivation satisfies D[x,y] = [Dx,y] + [x,Dy]
    for key in ("heisenberg3", "st3", "mueller_roemer7"):
        g = catalog(key)
        der = derivation_algebra(g)
        for d in der.basis:
            for i in range(g.dim):
                for j in range(i + 1, g.dim):
                    ei, ej = g.basis_vector(i), g.basis_vector(j)
                    lhs = d.apply(g.bracket(ei, ej))
                    rhs_vec = g.bracket(d.apply(ei), ej)
                    rhs_vec2 = g.bracket(ei, d.apply(ej))
                    assert lhs == tuple(a + b for a, b in zip(rhs_vec, rhs_vec2))


def test_inner_derivations_contained_for_catalog():
    for key, alg, _ in catalog_entries():
        der = derivation_algebra(alg)
        for ad in inner_derivations(alg):
            assert der.contains(ad), key


def test_derivation_span_commutator_closed():
    for key in ("heisenberg3", "sl2", "mueller_roemer7", "st2"):
        assert derivation_algebra(catalog(key)).commutator_closed(), key


# -- nil family certificate ----------------------------------------------------


def test_nil_family_trivial_cases():
    zeros = [RatMatrix.zeros(3, 3), RatMatrix.zeros(3, 3)]
    assert is_nil_family(zeros, 3)
    assert is_nil_family([unit(2, 0, 1)], 2)
    assert not is_nil_family([unit(2, 0, 0)], 2)


def test_nil_family_strict_uppers_flag():
    fam = [unit(3, 0, 1), unit(3, 0, 2), unit(3, 1, 2)]
    flag = engel_flag(fam, 3)
    assert flag is not None
    assert [s.dim for s in flag] == [1, 2, 3]
    # the flag certifies: each matrix maps W_{k+1} into W_k
    chain = [flag[0].__class__.zero(3)] + list(flag)
    for low, high in zip(chain, chain[1:]):
        for m in fam:
            for b in high.basis_vectors():
                assert low.contains(m.apply(b))


def _brute_force_nil_span(mats, n) -> bool:
    """Grid oracle: nilpotency of sum(t_i D_i) for t_i in {-2..3}."""
    grid = [-2, -1, 0, 1, 2, 3]
    for coeffs in itertools.product(grid, repeat=len(mats)):
        combo = RatMatrix.zeros(n, n)
        for c, m in zip(coeffs, mats):
            if c:
                combo = combo + m.scale(c)
        power = combo
        for _ in range(n - 1):
            power = power @ combo
        if not power.is_zero():
            return False
    return True


def test_nil_family_agrees_with_grid_oracle_small():
    rng = random.Random(17)
    cases = []
    # random pairs of strict upper triangular 3x3 and 4x4 (nil spans)
    for n in (3, 4):
        for _ in range(3):
            a = RatMatrix(
                [[rng.randint(-2, 2) if j > i else 0 for j in range(n)] for i in range(n)]
            )
            b = RatMatrix(
                [[rng.randint(-2, 2) if j > i else 0 for j in range(n)] for i in range(n)]
            )
            cases.append(([a, b], n))
    # pairs with a visible non-nilpotent member or combination
    cases.append(([unit(3, 0, 1), unit(3, 1, 0)], 3))
    cases.append(([unit(4, 0, 0), unit(4, 1, 2)], 4))
    cases.append(([unit(2, 0, 1), unit(2, 1, 0)], 2))
    for mats, n in cases:
        assert is_nil_family(mats, n) == _brute_force_nil_span(mats, n)


def test_nil_family_size_mismatch():
    with pytest.raises(ValueError):
        is_nil_family([unit(2, 0, 1), unit(3, 0, 1)], 2)


def test_find_non_nilpotent():
    w = find_non_nilpotent([unit(3, 0, 1), unit(3, 1, 0)])
    assert w is not None
    assert find_non_nilpotent([unit(3, 0, 1), unit(3, 0, 2)]) is None


# -- contractibility obstruction ---------------------------------------------------


def test_abelian1_inconclusive_with_identity_witness():
    report = contractibility_obstruction(catalog("abelian", 1))
    assert report.status == "inconclusive"
    assert report.witness is not None
    # the witness is a derivation of the abelian algebra and not nilpotent
    assert not report.witness.is_zero()


def test_mueller_roemer_obstructed():
    g = catalog("mueller_roemer7")
    report = contractibility_obstruction(g)
    assert report.status == "obstructed"
    assert report.derivation_dim == 10
    dims = [s.dim for s in report.flag]
    assert dims == sorted(dims) and dims[-1] == 7
    # oracle recheck: each basis derivation is nilpotent as a matrix
    der = derivation_algebra(g)
    for d in der.basis:
        m = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in d.row(i)] for i in range(7)])
        assert (m ** 7).is_zero_matrix


def test_st_prime3_inconclusive_with_grading_witness():
    g = catalog("st_prime", 3)
    report = contractibility_obstruction(g)
    assert report.status == "inconclusive"
    w = report.witness
    assert w is not None
    # the witness really is a derivation and really is non-nilpotent
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            ei, ej = g.basis_vector(i), g.basis_vector(j)
            lhs = w.apply(g.bracket(ei, ej))
            rhs = tuple(
                a + b for a, b in zip(g.bracket(w.apply(ei), ej), g.bracket(ei, w.apply(ej)))
            )
            assert lhs == rhs
    power = w
    for _ in range(g.dim):
        power = power @ w
    assert not power.is_zero()
    # the grading derivation diag(1, 1, 2) in the (E12, E23, E13) basis
    grading = RatMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert derivation_algebra(g).contains(grading)


def test_obstructed_algebra_has_no_constructed_contraction():
    # consistency gate: the obstructed algebra is not among the families
    # the contraction constructors accept
    report = contractibility_obstruction(catalog("mueller_roemer7"))
    assert report.obstructed
