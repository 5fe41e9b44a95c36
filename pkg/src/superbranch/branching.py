"""Shells, shell sets, shell coefficients, and the branching rules.

Restriction removes the last node and reattaches its arc in all possible
ways; the partitions that can appear differ from the original by a
"seashell" of alternating frown/smile arcs, and each carries an exact
monomial coefficient t^a * q^b / q^c that must reduce to a nonnegative
power of q.  Induction is obtained from restriction by the Frobenius
transpose identity.
"""

from __future__ import annotations

from functools import lru_cache

from .coeffs import CharCombination, QMonomial, QPolynomial
from .setpartition import SetPartition, crossing_number, enumerate_partitions


class ShellError(ValueError):
    """Invalid shell-set request (anchor conflicts or bad endpoints)."""


class Shell:
    """A seashell: nested frowns (i_r, l_r) interleaved with smiles (i_r, l_{r+1}).

    The frown lefts increase while the frown rights decrease, the r-th
    smile joins the r-th frown left to the (r+1)-st right, and the smile
    count is s - 1 or s for s frowns.
    """

    __slots__ = ("frowns", "smiles", "n")

    def __init__(self, frowns, smiles, n):
        self.frowns = tuple(frowns)
        self.smiles = tuple(smiles)
        self.n = n

    @property
    def s(self):
        return len(self.frowns)

    @property
    def s_prime(self):
        return len(self.smiles) + 1

    @property
    def anchor(self):
        return self.frowns[0]

    @property
    def width(self):
        i, l = self.anchor
        return l - i

    def __eq__(self, other):
        return (
            isinstance(other, Shell)
            and (self.frowns, self.smiles, self.n)
            == (other.frowns, other.smiles, other.n)
        )

    def __hash__(self):
        return hash((self.frowns, self.smiles, self.n))

    def __repr__(self):
        return "Shell(frowns=%r, smiles=%r, n=%d)" % (self.frowns, self.smiles, self.n)


def is_shell(frowns, smiles, n):
    """Decompose the oriented arcs as a shell, or return None.

    Frowns must be nested with strictly increasing lefts and strictly
    decreasing rights; smile r reuses frown left r and either closes at
    frown right r+1 or, for the innermost smile, at a fresh endpoint
    strictly inside the innermost frown.
    """
    frowns = sorted(set(map(tuple, frowns)))
    smiles = sorted(set(map(tuple, smiles)))
    if not frowns:
        return None
    for a, b in frowns + smiles:
        if not 1 <= a < b <= n:
            return None
    s = len(frowns)
    lefts = [a for a, _ in frowns]
    rights = [b for _, b in frowns]
    for r in range(s - 1):
        if lefts[r] >= lefts[r + 1] or rights[r] <= rights[r + 1]:
            return None
    m = len(smiles)
    if m not in (s - 1, s):
        return None
    for r, (a, b) in enumerate(smiles):
        if a != lefts[r]:
            return None
        if r < s - 1:
            if b != rights[r + 1]:
                return None
        elif b >= rights[s - 1]:
            return None  # innermost smile must close inside the innermost frown
    return Shell(frowns, smiles, n)


def whorl_count(shell):
    """Number of 360-degree turns of the spiral; each arc is half a whorl."""
    return (shell.s + shell.s_prime) // 2


def _check_anchor(lam, i, l):
    if i in lam.left_endpoints():
        raise ShellError("anchor left endpoint %d already used by %r" % (i, lam))
    if not 1 <= i < l <= lam.n:
        raise ShellError("anchor (%d,%d) out of range for n=%d" % (i, l, lam.n))


@lru_cache(maxsize=None)
def _shell_set_cached(lam, i, l):
    members = {lam}
    taken_rights = lam.right_endpoints()
    for k in range(i + 1, l):
        if k not in taken_rights:
            members.add(lam.with_arc((i, k)))
    for j, k in lam.arcs:
        if i < j < k < l:
            members.update(_shell_set_cached(lam.replace_left(j, i), j, k))
    return tuple(sorted(members, key=lambda sp: sp.sort_key()))


def shell_set(lam, i, l):
    """All partitions whose symmetric difference with lam + (i,l) is a shell.

    Computed by the reattachment recursion: keep lam, reattach (i,k) for
    free k inside (i,l), or slide an arc j-k of lam down to i and recurse
    inside (j,k).  Members stay over [n]; restriction regrounds them.
    """
    _check_anchor(lam, i, l)
    return _shell_set_cached(lam, i, l)


def shell_set_bruteforce(lam, i, l):
    """Oracle twin of shell_set: scan every partition of [n] and test the
    symmetric difference with is_shell."""
    _check_anchor(lam, i, l)
    union = set(lam.arcs) | {(i, l)}
    members = []
    for mu in enumerate_partitions(lam.n):
        mu_arcs = set(mu.arcs)
        frowns = union - mu_arcs
        smiles = mu_arcs - union
        shell = is_shell(frowns, smiles, lam.n)
        if shell is not None and shell.anchor == (i, l):
            members.append(mu)
    return tuple(sorted(members, key=lambda sp: sp.sort_key()))


def _coefficient_from_union(union, mu):
    """t^|union - mu| * q^crs(union & mu, union - mu) / q^crs(union & mu, mu - union)."""
    mu_arcs = set(mu.arcs)
    union_set = set(union)
    inter = sorted(union_set & mu_arcs)
    minus = sorted(union_set - mu_arcs)
    plus = sorted(mu_arcs - union_set)
    exponent = crossing_number(inter, minus) - crossing_number(inter, plus)
    return QMonomial(1, exponent, len(minus))


def shell_coefficient(lam, i, l, mu):
    """Shell coefficient of lam + (i,l) at a member mu of its shell set."""
    if mu not in shell_set(lam, i, l):
        raise ShellError("%r is not in the shell set of %r + (%d,%d)" % (mu, lam, i, l))
    union = lam.arcs + ((i, l),)
    return _coefficient_from_union(union, mu).require_integral("shell coefficient")


def tensor_expand_arc(lam, i, l):
    """Expand the product of lam's supercharacter with the reattachment sum
    of the arc (i,l): one term per shell-set member."""
    union = lam.arcs + ((i, l),)
    terms = []
    for mu in shell_set(lam, i, l):
        c = _coefficient_from_union(union, mu).require_integral("tensor coefficient")
        terms.append((mu, c))
    return CharCombination(lam.n, terms)


class TensorRewrite:
    """Outcome of multiplying two single-arc supercharacters.

    kind is "disjoint" (a plain two-arc partition), "shared_right" or
    "shared_left" (the shorter arc is torn off and reattached).
    """

    __slots__ = ("kind", "n", "kept", "reattached")

    def __init__(self, kind, n, kept, reattached=None):
        self.kind = kind
        self.n = n
        self.kept = kept
        self.reattached = reattached

    def __repr__(self):
        if self.kind == "disjoint":
            return "TensorRewrite(disjoint, %r)" % (self.kept,)
        return "TensorRewrite(%s, keep %r, reattach %r)" % (
            self.kind,
            self.kept,
            self.reattached,
        )

    def expand(self):
        """Resolve to an explicit supercharacter combination."""
        n = self.n
        if self.kind == "disjoint":
            return CharCombination(
                n, [(SetPartition(n, [self.kept, self.reattached]), QMonomial.one())]
            )
        if self.kind == "shared_right":
            base = SetPartition(n, [self.kept])
            return tensor_expand_arc(base, self.reattached[0], self.reattached[1])
        # shared_left: distribute the left-reattachment sum; every summand
        # is a conflict-free pair, so the product closes in one step.
        i, l = self.kept
        _, k = self.reattached
        t = QMonomial.t_power(1)
        terms = [(SetPartition(n, [(i, l)]), t)]
        for j in range(i + 1, k):
            terms.append((SetPartition(n, [(i, l), (j, k)]), t))
        return CharCombination(n, terms)


def tensor_pair(arc1, arc2, n):
    """Product rule for two single-arc supercharacters over [n]."""
    (i, l), (j, k) = tuple(arc1), tuple(arc2)
    if (i, l) == (j, k):
        raise ShellError("tensor_pair needs two distinct arcs")
    if not (1 <= i < l <= n and 1 <= j < k <= n):
        raise ShellError("arcs out of range for n=%d" % n)
    if i != j and l != k:
        return TensorRewrite("disjoint", n, (i, l), (j, k))
    if l == k:
        outer, inner = ((i, l), (j, k)) if i < j else ((j, k), (i, l))
        return TensorRewrite("shared_right", n, outer, inner)
    outer, inner = ((i, l), (j, k)) if l > k else ((j, k), (i, l))
    return TensorRewrite("shared_left", n, outer, inner)


# -- restriction --------------------------------------------------------------


@lru_cache(maxsize=None)
def restrict(lam):
    """Decompose the restriction of lam's supercharacter one level down.

    If the last node is isolated the character just regrounds; otherwise
    the arc i-n is torn off and reattached, producing one term per member
    of the shell set of (lam - i-n, i, n).
    """
    n = lam.n
    if n < 1:
        raise ValueError("cannot restrict below the empty ground set")
    arc = lam.arc_with_right(n)
    if arc is None:
        return CharCombination(
            n - 1, [(lam.reground(n - 1), QMonomial.one())]
        )
    expansion = tensor_expand_arc(lam.without_arc(arc), arc[0], n)
    return CharCombination(
        n - 1, [(mu.reground(n - 1), c) for mu, c in expansion.items()]
    )


def restrict_arc(i, l, n):
    """Restriction of the single-arc supercharacter i-l from [n] to [n-1]."""
    if not 1 <= i < l <= n:
        raise ShellError("arc (%d,%d) out of range for n=%d" % (i, l, n))
    if l != n:
        return CharCombination(n - 1, [(SetPartition(n - 1, [(i, l)]), QMonomial.one())])
    t = QMonomial.t_power(1)
    terms = [(SetPartition(n - 1), t)]
    for k in range(i + 1, n):
        terms.append((SetPartition(n - 1, [(i, k)]), t))
    return CharCombination(n - 1, terms)


def restriction_coefficient(lam, mu):
    """Coefficient of mu (over [n-1]) in the restriction of lam (over [n])."""
    n = lam.n
    if mu.n != n - 1:
        raise ValueError("mu must live one level below lam")
    arc = lam.arc_with_right(n)
    if arc is None:
        one = lam.arcs == mu.arcs
        return QMonomial.one() if one else QMonomial.zero()
    base = lam.without_arc(arc)
    if mu.reground(n) not in shell_set(base, arc[0], n):
        return QMonomial.zero()
    return _coefficient_from_union(lam.arcs, mu).require_integral(
        "restriction coefficient"
    )


# -- induction ----------------------------------------------------------------


def _induction_value(mu_arcs, lam):
    """t^|mu - lam| * q^crs(mu - lam, lam & mu) / q^crs(lam - mu, lam & mu)."""
    lam_arcs = set(lam.arcs)
    inter = sorted(lam_arcs & mu_arcs)
    plus = sorted(mu_arcs - lam_arcs)
    minus = sorted(lam_arcs - mu_arcs)
    exponent = crossing_number(plus, inter) - crossing_number(minus, inter)
    return QMonomial(1, exponent, len(plus)).require_integral("induction coefficient")


def induction_coefficient(mu, lam):
    """Coefficient of lam (over [n]) in the induction of mu (over [n-1])."""
    n = lam.n
    if mu.n != n - 1:
        raise ValueError("mu must live one level below lam")
    arc = lam.arc_with_right(n)
    if arc is None:
        one = lam.arcs == mu.arcs
        return QMonomial.one() if one else QMonomial.zero()
    base = lam.without_arc(arc)
    if mu.reground(n) not in shell_set(base, arc[0], n):
        return QMonomial.zero()
    return _induction_value(set(mu.arcs), lam)


def _reverse_shell_candidates(mu, n):
    """Every lam = nu + (i,n) whose shell set contains mu, by unwinding the
    smile chain of mu from each possible anchor left endpoint."""
    left_arc = {a[0]: a for a in mu.arcs}
    out = []

    def emit(frowns, smiles):
        kept = [a for a in mu.arcs if a not in smiles]
        lam = SetPartition(n, kept + frowns)
        out.append(lam)

    def walk(frowns, smiles):
        cur_left, cur_right = frowns[-1]
        sm = left_arc.get(cur_left)
        if sm is None:
            emit(frowns, smiles)  # innermost frown keeps no smile
            return
        l_next = sm[1]
        if l_next >= cur_right:
            return  # widths must shrink strictly; dead end
        smiles = smiles + [sm]
        emit(frowns, smiles)  # stop with the smile as innermost arc
        for i_next in range(cur_left + 1, l_next):
            walk(frowns + [(i_next, l_next)], smiles)

    for i in range(1, n):
        walk([(i, n)], [])
    return out


@lru_cache(maxsize=None)
def induce(mu, n, method="shells"):
    """Decompose the induction of mu's supercharacter one level up.

    The default enumerates candidates by reversing shell moves from mu;
    method="scan" checks every partition of [n] instead and is kept as the
    slow oracle.
    """
    if mu.n != n - 1:
        raise ValueError("mu must be a partition of [n-1]")
    terms = [(mu.reground(n), QMonomial.one())]
    if method == "scan":
        for lam in enumerate_partitions(n):
            if lam.arc_with_right(n) is None:
                continue
            d = induction_coefficient(mu, lam)
            if d.sign != 0:
                terms.append((lam, d))
    elif method == "shells":
        mu_arcs = set(mu.arcs)
        for lam in _reverse_shell_candidates(mu, n):
            terms.append((lam, _induction_value(mu_arcs, lam)))
    else:
        raise ValueError("unknown induce method %r" % method)
    return CharCombination(n, terms)


# -- identities ----------------------------------------------------------------


def frobenius_transpose_holds(lam, mu):
    """q^crs(lam,lam) t^|lam| d(mu,lam) == q^crs(mu,mu) t^|mu| c(lam,mu)."""
    c = restriction_coefficient(lam, mu)
    d = induction_coefficient(mu, lam)
    lhs = QMonomial(1, crossing_number(lam, lam), len(lam.arcs)) * d
    rhs = QMonomial(1, crossing_number(mu, mu), len(mu.arcs)) * c
    return lhs == rhs


def q_crossing_identity_check(lam, j, l):
    """The crossing q-analog: summing q^crs(lam, j-k) over arcs i-k of lam
    crossing (j,l) equals 1 + q + ... + q^(crs(lam, j-l) - 1)."""
    if j in lam.left_endpoints():
        raise ShellError("node %d is a left endpoint of %r" % (j, lam))
    if not 1 <= j < l <= lam.n:
        raise ShellError("(%d,%d) out of range" % (j, l))
    lhs = QPolynomial(
        QMonomial.q_power(crossing_number(lam, [(j, k)]))
        for i, k in lam.arcs
        if i < j < k < l
    )
    r = crossing_number(lam, [(j, l)])
    rhs = QPolynomial(QMonomial.q_power(e) for e in range(r))
    return lhs == rhs
