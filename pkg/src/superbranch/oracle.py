"""Brute-force finite-group verification engine.

Enumerates the unipotent group U_n and its normalizer B_n over F_q as
exact matrices, computes superclass orbits by two-sided BFS, evaluates
supercharacters on every element, and verifies orthogonality,
restriction, induction, superinduction, and Frobenius reciprocity by
direct summation.  q = 2 is the mandatory field: the additive character
is the sign character and all values are plain integers.  Enumeration and
orbit machinery also run at q = 3 within the size guards; the character
sums themselves are q = 2 only.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .branching import induce, restrict
from .coeffs import eval_exact
from .setpartition import SetPartition, bell_number, enumerate_partitions
from .supercharacter import char_value

SIZE_GUARDS = {2: 5, 3: 3}


class SizeGuardError(RuntimeError):
    """Requested group exceeds the brute-force size guards."""


def _check_guard(n, q):
    if q not in SIZE_GUARDS:
        raise SizeGuardError("oracle supports q in %s, not q=%r" % (sorted(SIZE_GUARDS), q))
    if n > SIZE_GUARDS[q]:
        raise SizeGuardError("n=%d exceeds the guard n<=%d for q=%d" % (n, SIZE_GUARDS[q], q))


# -- exact matrices over F_q -----------------------------------------------------


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b, q):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n))
        for i in range(n)
    )


def mat_inv_unitriangular(u, q):
    """Inverse of 1 + x with x strictly upper: alternating powers of x."""
    n = len(u)
    x = tuple(tuple((u[i][j] - (1 if i == j else 0)) % q for j in range(n)) for i in range(n))
    inv = identity(n)
    power = identity(n)
    sign = -1
    for _ in range(n - 1):
        power = mat_mul(power, x, q)
        inv = tuple(
            tuple((inv[i][j] + sign * power[i][j]) % q for j in range(n))
            for i in range(n)
        )
        sign = -sign
    return inv


def enumerate_group(n, q=2, kind="U"):
    """All elements of U_n (unitriangular) or B_n (invertible upper
    triangular) over F_q, each exactly once."""
    _check_guard(n, q)
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    diagonals = (
        [(1,) * n]
        if kind == "U"
        else [tuple(d) for d in product(range(1, q), repeat=n)]
    )
    if kind not in ("U", "B"):
        raise ValueError("kind must be 'U' or 'B'")
    for diag in diagonals:
        for values in product(range(q), repeat=len(positions)):
            rows = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
            for (i, j), v in zip(positions, values):
                rows[i][j] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


def _b_generators(n, q):
    """Transvections (and diagonal units for q > 2) generating B_n."""
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            for a in range(1, q):
                rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
                rows[i][j] = a
                gens.append(tuple(tuple(r) for r in rows))
    for i in range(n):
        for d in range(2, q):
            rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            rows[i][i] = d
            gens.append(tuple(tuple(r) for r in rows))
    return gens


class SuperclassTable:
    """Two-sided B_n-orbit decomposition of U_n - 1.

    Maps every group element to its superclass, every superclass to its
    unique arc-pattern representative, and records the class sizes.
    """

    __slots__ = ("n", "q", "elements", "class_of", "reps", "sizes")

    def __init__(self, n, q, elements, class_of, reps, sizes):
        self.n = n
        self.q = q
        self.elements = elements
        self.class_of = class_of
        self.reps = reps
        self.sizes = sizes

    def class_count(self):
        return len(self.reps)

    def partition_of(self, u):
        return self.reps[self.class_of[u]]


def _arc_representative(x, n):
    """The partition of an orbit element with at most one 1 per row/column,
    or None when the element is not in representative form."""
    arcs = []
    rows_used, cols_used = set(), set()
    for i in range(n):
        for j in range(n):
            v = x[i][j]
            if v == 0:
                continue
            if v != 1 or i in rows_used or j in cols_used:
                return None
            rows_used.add(i)
            cols_used.add(j)
            arcs.append((i + 1, j + 1))
    return SetPartition(n, arcs)


@lru_cache(maxsize=None)
def superclasses(n, q=2):
    """Orbit BFS over U_n - 1 under left/right multiplication by B_n
    generators; validates the class count against the Bell number."""
    _check_guard(n, q)
    gens = _b_generators(n, q)
    xs = []
    for u in enumerate_group(n, q, "U"):
        x = tuple(
            tuple((u[i][j] - (1 if i == j else 0)) % q for j in range(n))
            for i in range(n)
        )
        xs.append(x)
    seen = {}
    reps = []
    sizes = []
    for start in xs:
        if start in seen:
            continue
        cid = len(reps)
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    for y in (mat_mul(g, x, q), mat_mul(x, g, q)):
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
            frontier = nxt
        found = None
        for x in orbit:
            rep = _arc_representative(x, n)
            if rep is not None:
                if found is not None:
                    raise RuntimeError("orbit has two arc representatives")
                found = rep
        if found is None:
            raise RuntimeError("orbit has no arc representative")
        for x in orbit:
            seen[x] = cid
        reps.append(found)
        sizes.append(len(orbit))
    if len(reps) != bell_number(n):
        raise RuntimeError(
            "superclass count %d != Bell(%d) = %d" % (len(reps), n, bell_number(n))
        )
    if sum(sizes) != q ** (n * (n - 1) // 2):
        raise RuntimeError("superclass sizes do not cover the group")
    elements = []
    class_of = {}
    for x in xs:
        u = tuple(
            tuple((x[i][j] + (1 if i == j else 0)) % q for j in range(n))
            for i in range(n)
        )
        elements.append(u)
        class_of[u] = seen[x]
    return SuperclassTable(n, q, tuple(elements), class_of, tuple(reps), tuple(sizes))


# -- supercharacters as explicit functions ---------------------------------------


def _require_q2(q):
    if q != 2:
        raise SizeGuardError("character sums are implemented for q=2 only")


@lru_cache(maxsize=None)
def _class_values(lam, n, q):
    table = superclasses(n, q)
    return tuple(eval_exact(char_value(lam, rep), q) for rep in table.reps)


def char_function(lam, table):
    """The supercharacter of lam as a total map element -> exact value."""
    _require_q2(table.q)
    values = _class_values(lam, table.n, table.q)
    return {u: values[table.class_of[u]] for u in table.elements}


def group_inner_product(f, g, n, q=2):
    """(1/|U_n|) sum of f * conj(g) over all group elements; values are
    real integers at q = 2 so conjugation is trivial."""
    _require_q2(q)
    if len(f) != len(g):
        raise ValueError("functions defined on different groups")
    return Fraction(sum(f[u] * g[u] for u in f), len(f))


def _as_int(value, what):
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise RuntimeError("%s is not an integer: %r" % (what, value))
        return int(value)
    return int(value)


# -- embeddings -------------------------------------------------------------------


def _embed(u, n):
    """Pad a (n-1)x(n-1) unitriangular matrix with a trailing identity row
    and column (the last-column embedding)."""
    rows = [list(row) + [0] for row in u]
    rows.append([0] * (n - 1) + [1])
    return tuple(tuple(r) for r in rows)


def _strip(u):
    """Inverse of _embed on subgroup members."""
    m = len(u) - 1
    return tuple(tuple(u[i][j] for j in range(m)) for i in range(m))


def _in_subgroup(u, n):
    """Last-column embedding: (u-1)_ij != 0 implies i < j < n."""
    return all(u[i][n - 1] == 0 for i in range(n - 1))


# -- branching oracles --------------------------------------------------------------


def restrict_oracle(lam, n, q=2):
    """Decompose the restriction of lam's supercharacter by direct sums
    over the embedded subgroup."""
    _require_q2(q)
    _check_guard(n, q)
    if lam.n != n:
        raise ValueError("lam must be a partition of [n]")
    table_n = superclasses(n, q)
    table_h = superclasses(n - 1, q)
    lam_values = _class_values(lam, n, q)
    restricted = {
        u: lam_values[table_n.class_of[_embed(u, n)]] for u in table_h.elements
    }
    out = {}
    for mu in enumerate_partitions(n - 1):
        chi = char_function(mu, table_h)
        num = group_inner_product(restricted, chi, n - 1, q)
        den = group_inner_product(chi, chi, n - 1, q)
        c = _as_int(num / den, "restriction coefficient")
        if c:
            out[mu] = c
    return out


@lru_cache(maxsize=None)
def _induced_function(mu, n, q):
    """Ind of mu's supercharacter from the last-column subgroup, as the
    standard average of conjugates."""
    table_n = superclasses(n, q)
    table_h = superclasses(n - 1, q)
    mu_values = _class_values(mu, n - 1, q)

    def dotted(u):
        if not _in_subgroup(u, n):
            return 0
        return mu_values[table_h.class_of[_strip(u)]]

    inverses = {u: mat_inv_unitriangular(u, q) for u in table_n.elements}
    order_h = len(table_h.elements)
    out = {}
    for g in table_n.elements:
        total = 0
        for x in table_n.elements:
            y = mat_mul(mat_mul(x, g, q), inverses[x], q)
            total += dotted(y)
        value = Fraction(total, order_h)
        out[g] = value
    return out


def _decompose(fn, n, q):
    table = superclasses(n, q)
    out = {}
    for lam in enumerate_partitions(n):
        chi = char_function(lam, table)
        num = group_inner_product(fn, chi, n, q)
        den = group_inner_product(chi, chi, n, q)
        c = num / den
        if c:
            out[lam] = _as_int(c, "induction coefficient")
    return out


def induce_oracle(mu, n, q=2):
    """Decompose ordinary induction of mu's supercharacter by direct sums."""
    _require_q2(q)
    if n > 4:
        raise SizeGuardError("full induction sums are guarded to n<=4")
    if mu.n != n - 1:
        raise ValueError("mu must be a partition of [n-1]")
    return _decompose(_induced_function(mu, n, q), n, q)


def superinduce_oracle(mu, n, q=2):
    """Decompose superinduction: average the dotted character over each
    superclass and scale by the index."""
    _require_q2(q)
    if n > 4:
        raise SizeGuardError("full superinduction sums are guarded to n<=4")
    if mu.n != n - 1:
        raise ValueError("mu must be a partition of [n-1]")
    table_n = superclasses(n, q)
    table_h = superclasses(n - 1, q)
    mu_values = _class_values(mu, n - 1, q)
    index = len(table_n.elements) // len(table_h.elements)

    class_sums = [0] * table_n.class_count()
    for u in table_n.elements:
        if _in_subgroup(u, n):
            class_sums[table_n.class_of[u]] += mu_values[table_h.class_of[_strip(u)]]
    fn = {}
    for u in table_n.elements:
        cid = table_n.class_of[u]
        fn[u] = Fraction(index * class_sums[cid], table_n.sizes[cid])
    return _decompose(fn, n, q)


def frobenius_group_check(mu, lam, n, q=2):
    """(<Ind mu, lam> over U_n, <mu, Res lam> over U_{n-1}) by direct sums."""
    _require_q2(q)
    table_n = superclasses(n, q)
    table_h = superclasses(n - 1, q)
    ind = _induced_function(mu, n, q)
    chi_lam = char_function(lam, table_n)
    lhs = group_inner_product(ind, chi_lam, n, q)
    lam_values = _class_values(lam, n, q)
    res = {u: lam_values[table_n.class_of[_embed(u, n)]] for u in table_h.elements}
    chi_mu = char_function(mu, table_h)
    rhs = group_inner_product(chi_mu, res, n - 1, q)
    return lhs, rhs


# -- verification suites --------------------------------------------------------------


def _check_orthogonality(n, q):
    from .supercharacter import inner_product_formula

    table = superclasses(n, q)
    compared = []
    ok = True
    partitions = list(enumerate_partitions(n))
    functions = {lam: char_function(lam, table) for lam in partitions}
    for lam in partitions:
        for mu in partitions:
            got = group_inner_product(functions[lam], functions[mu], n, q)
            want = eval_exact(inner_product_formula(lam, mu), q)
            same = got == want
            ok = ok and same
            compared.append(
                {
                    "lam": lam.sort_key(),
                    "mu": mu.sort_key(),
                    "group_sum": str(got),
                    "formula": str(want),
                    "pass": same,
                }
            )
    return ok, compared


def _check_restriction(n, q):
    compared = []
    ok = True
    for lam in enumerate_partitions(n):
        got = restrict_oracle(lam, n, q)
        want = {mu: v for mu, v in restrict(lam).eval(q).items() if v}
        same = got == want
        ok = ok and same
        compared.append(
            {
                "lam": lam.sort_key(),
                "oracle": {mu.sort_key(): str(v) for mu, v in sorted(got.items(), key=lambda i: i[0].sort_key())},
                "formula": {mu.sort_key(): str(v) for mu, v in sorted(want.items(), key=lambda i: i[0].sort_key())},
                "pass": same,
            }
        )
    return ok, compared


def _check_induction(n, q, super_route=False):
    compared = []
    ok = True
    oracle = superinduce_oracle if super_route else induce_oracle
    for mu in enumerate_partitions(n - 1):
        got = oracle(mu, n, q)
        want = {lam: v for lam, v in induce(mu, n).eval(q).items() if v}
        same = got == want
        ok = ok and same
        compared.append(
            {
                "mu": mu.sort_key(),
                "oracle": {lam.sort_key(): str(v) for lam, v in sorted(got.items(), key=lambda i: i[0].sort_key())},
                "formula": {lam.sort_key(): str(v) for lam, v in sorted(want.items(), key=lambda i: i[0].sort_key())},
                "pass": same,
            }
        )
    return ok, compared


def _check_frobenius(n, q):
    compared = []
    ok = True
    for mu in enumerate_partitions(n - 1):
        for lam in enumerate_partitions(n):
            lhs, rhs = frobenius_group_check(mu, lam, n, q)
            same = lhs == rhs
            ok = ok and same
            compared.append(
                {
                    "mu": mu.sort_key(),
                    "lam": lam.sort_key(),
                    "induced_side": str(lhs),
                    "restricted_side": str(rhs),
                    "pass": same,
                }
            )
    return ok, compared


SUITES = ("orthogonality", "restriction", "induction", "superinduction", "frobenius")


def verify_suite(suite, n, q=2):
    """Run one named suite (or "all"); returns a JSON-ready report."""
    _require_q2(q)
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        if name == "orthogonality":
            ok, compared = _check_orthogonality(n, q)
        elif name == "restriction":
            ok, compared = _check_restriction(n, q)
        elif name == "induction":
            ok, compared = _check_induction(n, q)
        elif name == "superinduction":
            ok, compared = _check_induction(n, q, super_route=True)
        elif name == "frobenius":
            ok, compared = _check_frobenius(n, q)
        else:
            raise ValueError("unknown suite %r" % name)
        checks.append({"name": name, "pass": ok, "cases": len(compared), "compared": compared})
    return {
        "suite": suite,
        "n": n,
        "q": q,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
