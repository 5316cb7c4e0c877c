"""Exact integer linear algebra for first-homology checks and weight maps.

All matrices are numpy arrays with ``dtype=object`` holding Python ints,
so intermediate Smith-form entries can grow without overflow.  Fixed-width
arithmetic is deliberately avoided: a silent wraparound here would corrupt
a verdict.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .words import Presentation, exponent_sum


class NoSurjection(ValueError):
    """No primitive integer weight vector exists in the search box."""


def _object_matrix(rows: list[list[int]], ncols: int) -> np.ndarray:
    mat = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        for j in range(ncols):
            mat[i, j] = int(row[j])
    return mat


def exponent_matrix(pres: Presentation) -> np.ndarray:
    """k x n matrix with entry[i][j] = exponent sum of generator j in relator i."""
    n = len(pres.generators)
    rows = [[exponent_sum(r, j) for j in range(n)] for r in pres.relators]
    return _object_matrix(rows, n)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact object-dtype matrix product."""
    k, m = a.shape
    m2, n = b.shape
    if m != m2:
        raise ValueError("shape mismatch")
    out = np.empty((k, n), dtype=object)
    for i in range(k):
        for j in range(n):
            out[i, j] = sum(int(a[i, l]) * int(b[l, j]) for l in range(m))
    return out


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _min_abs_nonzero(d: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_val = None
    for i in range(t, len(d)):
        for j in range(t, len(d[0])):
            v = abs(d[i][j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
    return best


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V = D with U, V unimodular and D a nonneg divisibility chain."""

    matrix: np.ndarray
    left: np.ndarray   # U, k x k
    diag: np.ndarray   # D, k x n
    right: np.ndarray  # V, n x n

    def diagonal(self) -> list[int]:
        k, n = self.diag.shape
        return [int(self.diag[i, i]) for i in range(min(k, n))]

    def check(self) -> None:
        """Assert the defining invariants exactly."""
        k, n = self.diag.shape
        prod = mat_mul(mat_mul(self.left, self.matrix), self.right)
        if not (prod == self.diag).all():
            raise AssertionError("U @ M @ V != D")
        if abs(integer_det(self.left)) != 1 or abs(integer_det(self.right)) != 1:
            raise AssertionError("transform matrices are not unimodular")
        diag = self.diagonal()
        for i in range(k):
            for j in range(n):
                if i != j and self.diag[i, j] != 0:
                    raise AssertionError("off-diagonal entry in D")
        for i, d in enumerate(diag):
            if d < 0:
                raise AssertionError("negative diagonal entry")
            if i + 1 < len(diag) and d != 0 and diag[i + 1] % d != 0:
                raise AssertionError("divisibility chain broken")
            if d == 0 and i + 1 < len(diag) and diag[i + 1] != 0:
                raise AssertionError("zero before nonzero on the diagonal")


def smith_normal_form(matrix) -> SmithForm:
    """Smith normal form by exact Euclidean pivoting.

    Row operations accumulate into U (left factor), column operations into
    V; the invariant ``U @ M @ V == current`` holds throughout, so the
    result satisfies U @ M @ V = D with |det U| = |det V| = 1.
    """
    m_in = np.array(matrix, dtype=object)
    if m_in.ndim != 2:
        m_in = m_in.reshape((m_in.shape[0] if m_in.size else 0, -1))
    k, n = m_in.shape
    d = [[int(m_in[i, j]) for j in range(n)] for i in range(k)]
    u = _identity(k)
    v = _identity(n)

    def swap_rows(a, i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(a, i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def row_axpy(a, i, src, c):
        a[i] = [x + c * y for x, y in zip(a[i], a[src])]

    def col_axpy(a, j, src, c):
        for row in a:
            row[j] = row[j] + c * row[src]

    t = 0
    while t < min(k, n):
        piv = _min_abs_nonzero(d, t)
        if piv is None:
            break
        while True:
            i0, j0 = piv
            if i0 != t:
                swap_rows(d, t, i0)
                swap_rows(u, t, i0)
            if j0 != t:
                swap_cols(d, t, j0)
                swap_cols(v, t, j0)
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            pivot = d[t][t]
            dirty = False
            for i in range(t + 1, k):
                if d[i][t]:
                    q = d[i][t] // pivot
                    if q:
                        row_axpy(d, i, t, -q)
                        row_axpy(u, i, t, -q)
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // pivot
                    if q:
                        col_axpy(d, j, t, -q)
                        col_axpy(v, j, t, -q)
                    if d[t][j]:
                        dirty = True
            if dirty:
                piv = _min_abs_nonzero(d, t)
                continue
            bad = None
            for i in range(t + 1, k):
                for j in range(t + 1, n):
                    if d[i][j] % pivot:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # Pull a non-divisible row into the pivot row and restart the step.
            row_axpy(d, t, bad, 1)
            row_axpy(u, t, bad, 1)
            piv = _min_abs_nonzero(d, t)
        t += 1

    return SmithForm(
        matrix=m_in,
        left=_object_matrix(u, k),
        diag=_object_matrix(d, n) if k else np.empty((0, n), dtype=object),
        right=_object_matrix(v, n),
    )


def integer_det(matrix: np.ndarray) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = matrix.shape[0]
    if n == 0:
        return 1
    a = [[int(matrix[i, j]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class H1Structure:
    """Free rank and invariant factors of the abelianized group."""

    free_rank: int
    torsion: tuple[int, ...]

    def is_free(self) -> bool:
        return not self.torsion


def h1_structure(pres: Presentation) -> H1Structure:
    mat = exponent_matrix(pres)
    snf = smith_normal_form(mat)
    diag = [x for x in snf.diagonal() if x != 0]
    n = len(pres.generators)
    return H1Structure(free_rank=n - len(diag), torsion=tuple(x for x in diag if x > 1))


@dataclass(frozen=True)
class WirtingerCheck:
    ok: bool
    reason: str
    h1: H1Structure


def is_generalized_wirtinger(pres: Presentation) -> WirtingerCheck:
    """H1 free abelian of rank n - k with n - k >= 1."""
    h1 = h1_structure(pres)
    n, k = len(pres.generators), len(pres.relators)
    if h1.torsion:
        return WirtingerCheck(False, f"torsion {list(h1.torsion)} in H1", h1)
    if h1.free_rank != n - k:
        return WirtingerCheck(
            False, f"H1 rank {h1.free_rank} != n - k = {n - k}", h1
        )
    if n - k < 1:
        return WirtingerCheck(False, "n - k < 1, H1 would be trivial", h1)
    return WirtingerCheck(True, f"H1 free abelian of rank {h1.free_rank}", h1)


def integer_kernel_basis(matrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {w : M w = 0}, from Smith-form V columns."""
    snf = smith_normal_form(matrix)
    k, n = snf.diag.shape
    basis = []
    for j in range(n):
        d_j = int(snf.diag[j, j]) if j < k else 0
        if d_j == 0:
            basis.append(tuple(int(snf.right[i, j]) for i in range(n)))
    return basis


@dataclass(frozen=True)
class WeightHom:
    """Primitive integer weight vector plus the generators to flip."""

    weights: tuple[int, ...]
    flips: frozenset[int]

    def nonnegative_weights(self) -> tuple[int, ...]:
        return tuple(abs(w) for w in self.weights)


def _canonical_sign(vec: tuple[int, ...]) -> tuple[int, ...]:
    for x in vec:
        if x != 0:
            return vec if x > 0 else tuple(-y for y in vec)
    return vec


def find_weight_homomorphisms(pres: Presentation, coeff_bound: int = 3) -> list[WeightHom]:
    """All primitive weight vectors in the kernel-combination search box.

    Combinations of the kernel basis with coefficients in
    [-coeff_bound, coeff_bound] are divided by their gcd and deduplicated
    up to global sign; the all-ones vector, when present, comes first and
    the rest follow in lexicographic order.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    mat = exponent_matrix(pres)
    basis = integer_kernel_basis(mat)
    n = len(pres.generators)
    found: set[tuple[int, ...]] = set()
    for coeffs in itertools.product(range(-coeff_bound, coeff_bound + 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        vec = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(n))
        if not any(vec):
            continue
        g = math.gcd(*[abs(x) for x in vec])
        vec = tuple(x // g for x in vec)
        found.add(_canonical_sign(vec))
    if not found:
        raise NoSurjection("no primitive kernel vector in the search box")
    all_ones = tuple([1] * n)
    ordered = sorted(found, key=lambda v: (v != all_ones, v))
    out = []
    k = len(pres.relators)
    for vec in ordered:
        for i in range(k):
            assert sum(int(mat[i, j]) * vec[j] for j in range(n)) == 0
        assert math.gcd(*[abs(x) for x in vec]) == 1
        out.append(WeightHom(vec, frozenset(j for j, w in enumerate(vec) if w < 0)))
    return out
