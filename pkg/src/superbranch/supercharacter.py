"""Closed-form supercharacter values, degrees, and inner products.

Supercharacters and superclasses of the unipotent group U_n are both
indexed by set partitions of [n].  Values are exact symbolic monomials in
q and t = q - 1; numeric evaluation is deferred to coeffs.eval_exact.
"""

from __future__ import annotations

from .coeffs import QMonomial
from .setpartition import SetPartition, crossing_number, dim, nesting_number


def _check_same_ground(lam, mu):
    if lam.n != mu.n:
        raise ValueError("mismatched ground sets [%d] vs [%d]" % (lam.n, mu.n))


def char_value(lam, mu):
    """Value of the supercharacter of lam at the superclass representative of mu.

    Zero whenever mu contains an arc (i,j) or (j,k) strictly inside some
    arc (i,k) of lam sharing an endpoint with it; otherwise
    (-1)^|lam & mu| * q^(dim lam - nst) * t^|lam - mu|.
    """
    _check_same_ground(lam, mu)
    mu_by_left = {a[0]: a for a in mu.arcs}
    mu_by_right = {a[1]: a for a in mu.arcs}
    for i, k in lam.arcs:
        inner_left = mu_by_left.get(i)
        if inner_left is not None and inner_left[1] < k:
            return QMonomial.zero()
        inner_right = mu_by_right.get(k)
        if inner_right is not None and inner_right[0] > i:
            return QMonomial.zero()
    common = sum(1 for a in lam.arcs if a in mu.arcs)
    extra = len(lam.arcs) - common
    sign = -1 if common % 2 else 1
    value = QMonomial(sign, dim(lam) - nesting_number(lam, mu), extra)
    return value.require_integral("char_value")


def degree(lam):
    """Degree q^dim(lam) * t^|lam| (the value at the identity)."""
    return QMonomial(1, dim(lam), len(lam.arcs))


def inner_product_formula(lam, mu):
    """Orthogonality: <X^lam, X^mu> = delta * t^|lam| * q^crs(lam, lam)."""
    _check_same_ground(lam, mu)
    if lam != mu:
        return QMonomial.zero()
    return QMonomial(1, crossing_number(lam, lam), len(lam.arcs))


def char_value_by_arcs(lam, mu):
    """char_value computed through the tensor factorization into single arcs.

    Supercharacters factor as pointwise products over their arcs; this is
    the independent cross-check of char_value.
    """
    _check_same_ground(lam, mu)
    value = QMonomial.one()
    for arc in lam.arcs:
        value = value * char_value(SetPartition(lam.n, [arc]), mu)
    return value


def superclass_matrix(lam, q=2):
    """The unitriangular superclass representative of lam over F_q.

    Ones on the diagonal and at every arc position; consumed by the
    brute-force group oracle.
    """
    n = lam.n
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in lam.arcs:
        rows[i - 1][j - 1] = 1 % q
    return tuple(tuple(r) for r in rows)
