"""Exact linear solves: fraction-free elimination over Laurent polynomials and
plain Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPolynomial


class SingularSystem(ArithmeticError):
    pass


def bareiss_solve(matrix, rhs):
    """Solve ``matrix @ c = rhs`` over the fraction field of a Laurent ring.

    Returns ``(numerators, det)`` with ``c_i = numerators[i] / det``; every
    numerator is a Laurent polynomial (Cramer's rule), and all divisions
    performed are exact.
    """
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    prev = LaurentPolynomial.constant(1)
    sign = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n + 1):
                v = akk * row_i[j] - aik * row_k[j]
                row_i[j] = v.exact_div(prev) if k else v
            row_i[k] = LaurentPolynomial.zero()
        prev = akk
    det = a[n - 1][n - 1]
    # back substitution for det * c_i, each step an exact division
    scaled = [None] * n
    for i in range(n - 1, -1, -1):
        acc = det * a[i][n]
        for j in range(i + 1, n):
            acc = acc - a[i][j] * scaled[j]
        scaled[i] = acc.exact_div(a[i][i])
    return scaled, det


def fraction_solve(matrix, rhs):
    """Gaussian elimination with exact rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        row_k = a[k]
        for j in range(k, n + 1):
            row_k[j] *= inv
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                row_i = a[i]
                for j in range(k, n + 1):
                    row_i[j] -= f * row_k[j]
    return [a[i][n] for i in range(n)]
