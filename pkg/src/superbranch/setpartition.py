"""Set partitions of {1, ..., n} in arc-diagram form.

A set partition is stored as the set of arcs (i, j), i < j, joining
consecutive elements of each block: no two arcs share a left endpoint and
no two arcs share a right endpoint.  Nodes are 1-based and the ground-set
size n is carried explicitly, so isolated nodes are meaningful.

The crossing/nesting helpers accept arbitrary arc iterables, not just
valid partitions, because the branching formulas apply them to differences
like lam - mu that may conflict internally.
"""

from __future__ import annotations


class PartitionError(ValueError):
    """Malformed arc set or partition string."""


def _as_arcs(x):
    if isinstance(x, SetPartition):
        return x.arcs
    return tuple(sorted(tuple(a) for a in x))


class SetPartition:
    """A set partition of {1, ..., n}, canonically sorted by (left, right)."""

    __slots__ = ("n", "arcs")

    def __init__(self, n, arcs=()):
        if n < 0:
            raise PartitionError("ground-set size must be nonnegative")
        arcs = tuple(sorted((int(i), int(j)) for i, j in arcs))
        lefts, rights = set(), set()
        for i, j in arcs:
            if i >= j:
                raise PartitionError("arc (%d,%d) needs left < right" % (i, j))
            if i < 1 or j > n:
                raise PartitionError("arc (%d,%d) out of range for n=%d" % (i, j, n))
            if i in lefts:
                raise PartitionError("conflicting arcs share left endpoint %d" % i)
            if j in rights:
                raise PartitionError("conflicting arcs share right endpoint %d" % j)
            lefts.add(i)
            rights.add(j)
        self.n = n
        self.arcs = arcs

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __contains__(self, arc):
        return tuple(arc) in self.arcs

    def __repr__(self):
        return "SetPartition(%d, %r)" % (self.n, format_partition(self))

    # -- endpoint views ----------------------------------------------------

    def left_endpoints(self):
        return frozenset(i for i, _ in self.arcs)

    def right_endpoints(self):
        return frozenset(j for _, j in self.arcs)

    def arc_with_left(self, i):
        for a in self.arcs:
            if a[0] == i:
                return a
        return None

    def arc_with_right(self, j):
        for a in self.arcs:
            if a[1] == j:
                return a
        return None

    # -- rewriting helpers -------------------------------------------------

    def with_arc(self, arc):
        return SetPartition(self.n, self.arcs + (tuple(arc),))

    def without_arc(self, arc):
        arc = tuple(arc)
        if arc not in self.arcs:
            raise PartitionError("arc %r not present" % (arc,))
        return SetPartition(self.n, tuple(a for a in self.arcs if a != arc))

    def replace_left(self, j, i):
        """Move the arc starting at j so it starts at i instead."""
        old = self.arc_with_left(j)
        if old is None:
            raise PartitionError("no arc with left endpoint %d" % j)
        return SetPartition(
            self.n, tuple(a for a in self.arcs if a != old) + ((i, old[1]),)
        )

    def reground(self, n):
        """Same arcs over a different ground-set size."""
        return SetPartition(n, self.arcs)

    def sort_key(self):
        return format_partition(self)


# -- text format ------------------------------------------------------------


def parse_partition(text, n):
    """Parse "i-j,i-j,..." (empty string for the empty partition)."""
    text = text.strip()
    if not text:
        return SetPartition(n)
    arcs = []
    for token in text.split(","):
        parts = token.strip().split("-")
        if len(parts) != 2:
            raise PartitionError("malformed arc token %r" % token)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise PartitionError("malformed arc token %r" % token) from None
        arcs.append((i, j))
    return SetPartition(n, arcs)


def format_partition(sp):
    """Canonical text form; round-trips through parse_partition."""
    return ",".join("%d-%d" % a for a in sp.arcs)


# -- statistics ---------------------------------------------------------------


def parts(sp):
    """Blocks of the partition, as a tuple of tuples sorted by minimum."""
    succ = dict(sp.arcs)
    starts = [i for i in range(1, sp.n + 1) if i not in sp.right_endpoints()]
    blocks = []
    for start in starts:
        block = [start]
        while block[-1] in succ:
            block.append(succ[block[-1]])
        blocks.append(tuple(block))
    return tuple(sorted(blocks))


def dim(x):
    """Sum of (right - left - 1) over all arcs."""
    return sum(j - i - 1 for i, j in _as_arcs(x))


def crossing_set(a, b):
    """Ordered pairs ((i,k),(j,l)) in a x b with i < j < k < l."""
    arcs_a, arcs_b = _as_arcs(a), _as_arcs(b)
    return tuple(
        ((i, k), (j, l))
        for i, k in arcs_a
        for j, l in arcs_b
        if i < j < k < l
    )


def crossing_number(a, b):
    return len(crossing_set(a, b))


def nesting_set(a, b):
    """Ordered pairs ((i,l),(j,k)) in a x b with i < j < k < l (a-arc outside)."""
    arcs_a, arcs_b = _as_arcs(a), _as_arcs(b)
    return tuple(
        ((i, l), (j, k))
        for i, l in arcs_a
        for j, k in arcs_b
        if i < j < k < l
    )


def nesting_number(a, b):
    return len(nesting_set(a, b))


# -- enumeration --------------------------------------------------------------


def enumerate_partitions(n):
    """Yield every set partition of [n] exactly once.

    Order: lexicographic in the restricted-growth string (block labels
    assigned in order of first appearance), so the all-singletons
    partition (empty arc set) comes first.
    """
    if n == 0:
        yield SetPartition(0)
        return

    rgs = [0] * n
    maxes = [0] * n

    def rec(pos):
        if pos == n:
            blocks = {}
            for node, label in enumerate(rgs, start=1):
                blocks.setdefault(label, []).append(node)
            arcs = []
            for block in blocks.values():
                arcs.extend(zip(block, block[1:]))
            yield SetPartition(n, arcs)
            return
        top = maxes[pos - 1] if pos else -1
        for label in range(top + 2):
            rgs[pos] = label
            maxes[pos] = max(top, label)
            yield from rec(pos + 1)

    yield from rec(0)


def bell_number(n):
    """Number of set partitions of [n], by the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
