import itertools
import math
import random

import numpy as np
import pytest

from npicheck.homology import (
    NoSurjection,
    exponent_matrix,
    find_weight_homomorphisms,
    h1_structure,
    integer_det,
    integer_kernel_basis,
    is_generalized_wirtinger,
    mat_mul,
    smith_normal_form,
)
from npicheck.words import flip_generator, make_presentation
from samples import sample_a, sample_braid, torsion_presentation


def cofactor_det(rows, cols, matrix, memo):
    """Independent determinant for the minor-gcd oracle (Laplace expansion)."""
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if not rows:
        return 1
    r = rows[-1]
    total = 0
    for pos, c in enumerate(cols):
        entry = matrix[r][c]
        if entry:
            sub = cofactor_det(rows[:-1], cols[:pos] + cols[pos + 1 :], matrix, memo)
            sign = 1 if (len(cols) - 1 - pos) % 2 == 0 else -1
            total += sign * entry * sub
    memo[key] = total
    return total


def minor_gcds(matrix):
    """gcd of all i x i minors, for every i."""
    k = len(matrix)
    n = len(matrix[0]) if k else 0
    memo = {}
    out = []
    for size in range(1, min(k, n) + 1):
        g = 0
        for rows in itertools.combinations(range(k), size):
            for cols in itertools.combinations(range(n), size):
                g = math.gcd(g, abs(cofactor_det(rows, cols, matrix, memo)))
        out.append(g)
    return out


def test_exponent_matrix_examples():
    mat = exponent_matrix(sample_a())
    assert mat.tolist() == [[-1, 1, 0], [0, -1, 1]]
    assert exponent_matrix(make_presentation(["a"], [])).shape == (0, 1)
    assert exponent_matrix(make_presentation(["a"], [(1, 1)])).tolist() == [[2]]


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal() == [1, 1]
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.diagonal() == [2, 4]
    snf.check()
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal() == [0, 0]


def test_snf_property_suite():
    rng = random.Random(20)
    for _ in range(1000):
        k = rng.randrange(1, 7)
        n = rng.randrange(1, 7)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(k)]
        snf = smith_normal_form(rows)
        snf.check()
        diag = snf.diagonal()
        oracle = minor_gcds(rows)
        prod = 1
        for i, g in enumerate(oracle):
            prod *= diag[i]
            assert prod == g, f"minor gcd mismatch at size {i + 1} for {rows}"


def test_h1_examples():
    assert h1_structure(sample_a()) == h1_structure(sample_braid())
    h1 = h1_structure(sample_a())
    assert h1.free_rank == 1 and h1.torsion == ()
    ht = h1_structure(torsion_presentation())
    assert ht.free_rank == 0 and ht.torsion == (2,)


def test_is_generalized_wirtinger():
    assert is_generalized_wirtinger(sample_a()).ok
    bad = is_generalized_wirtinger(torsion_presentation())
    assert not bad.ok and "torsion" in bad.reason
    free2 = is_generalized_wirtinger(make_presentation(["a", "b"], []))
    assert free2.ok and free2.h1.free_rank == 2


def test_integer_kernel_basis():
    basis = integer_kernel_basis(exponent_matrix(sample_a()))
    assert len(basis) == 1
    vec = basis[0]
    assert vec in ((1, 1, 1), (-1, -1, -1))
    assert integer_kernel_basis(np.empty((0, 2), dtype=object)) == [(1, 0), (0, 1)]
    assert integer_kernel_basis([[2]]) == []


def test_find_weight_homomorphisms():
    homs = find_weight_homomorphisms(sample_a())
    assert homs[0].weights == (1, 1, 1) and homs[0].flips == frozenset()
    braid_homs = find_weight_homomorphisms(sample_braid())
    assert [h.weights for h in braid_homs] == [(1, 1, 1)]
    with pytest.raises(NoSurjection):
        find_weight_homomorphisms(torsion_presentation())


def test_weight_vectors_satisfy_invariants():
    rng = random.Random(21)
    for _ in range(50):
        n = rng.randrange(2, 5)
        k = rng.randrange(0, n)
        rels = []
        for _ in range(k):
            rels.append(
                tuple(
                    rng.choice([1, -1]) * rng.randrange(1, n + 1)
                    for _ in range(rng.randrange(1, 8))
                )
            )
        pres = make_presentation([f"g{i}" for i in range(n)], rels)
        mat = exponent_matrix(pres)
        try:
            homs = find_weight_homomorphisms(pres, 2)
        except NoSurjection:
            continue
        for hom in homs:
            assert math.gcd(*[abs(w) for w in hom.weights]) == 1
            for i in range(k):
                assert sum(int(mat[i, j]) * hom.weights[j] for j in range(n)) == 0
            assert all(w >= 0 for j, w in enumerate(hom.weights) if j not in hom.flips)


def test_h1_invariance_under_reordering_and_flips():
    p = sample_a()
    reordered = make_presentation(p.generators, (p.relators[1], p.relators[0]))
    assert h1_structure(p) == h1_structure(reordered)
    for g in range(3):
        assert h1_structure(flip_generator(p, g)) == h1_structure(p)


def test_integer_det():
    assert integer_det(np.array([[2, 0], [0, 3]], dtype=object)) == 6
    assert integer_det(np.array([[0, 1], [1, 0]], dtype=object)) == -1
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        memo = {}
        assert integer_det(np.array(rows, dtype=object)) == cofactor_det(
            tuple(range(n)), tuple(range(n)), rows, memo
        )


def test_mat_mul_exactness():
    a = np.array([[10**30, 1], [0, 1]], dtype=object)
    b = np.array([[1, 0], [10**30, 1]], dtype=object)
    prod = mat_mul(a, b)
    assert prod.tolist() == [[2 * 10**30, 1], [10**30, 1]]
