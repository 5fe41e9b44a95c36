"""Shell tableaux and their bijection with Bratteli paths.

A shell tableau is a sequence of labeled (generalized) shells, one per
full restrict-induce step.  Each restriction half-step appends a
placeholder loop shell and records the torn-off/reattached arcs in the
shells owning them; each induction half-step converts the placeholder
into the new arc ending at n (reusing its label) and records the deeper
reattachments.  Labels therefore grow monotonically through the walk,
which is what makes the inverse map a matter of reading shapes at label
thresholds.

Two conventions that the worked examples force:

* when a restriction drops a shape arc without reattaching it (one more
  frown than smiles in the step shell), the owning shell receives a loop
  placeholder so its shape contribution goes away;
* the consecutive-label prohibition of a strict labeling applies to
  conflicting arcs drawn on the same side (frown/frown or smile/smile);
  whorl pairs of mixed orientation routinely carry consecutive labels.
"""

from __future__ import annotations

from typing import NamedTuple

from . import bratteli
from .branching import is_shell
from .setpartition import SetPartition, dim

FROWN = "frown"
SMILE = "smile"
LOOP = "loop"


class TableauError(ValueError):
    """Malformed tableau or path."""


class LabeledArc(NamedTuple):
    left: int
    right: int
    label: int
    orient: str

    def is_loop(self):
        return self.orient == LOOP

    def arc(self):
        return (self.left, self.right)


def _loop(n, label):
    return LabeledArc(n, n, label, LOOP)


class LabeledShell:
    """One shell of a tableau: arcs ordered by label."""

    __slots__ = ("arcs", "n")

    def __init__(self, arcs, n):
        arcs = tuple(sorted(arcs, key=lambda a: a.label))
        for a in arcs:
            if a.is_loop():
                if (a.left, a.right) != (n, n):
                    raise TableauError("loop must sit at node %d" % n)
            elif not 1 <= a.left < a.right <= n:
                raise TableauError("arc %r out of range" % (a,))
        self.arcs = arcs
        self.n = n

    def labels(self):
        return tuple(a.label for a in self.arcs)

    def min_label(self):
        return self.arcs[0].label

    def non_loops(self):
        return tuple(a for a in self.arcs if not a.is_loop())

    def shape_arc(self, limit=None):
        """The top-labeled arc (within the label limit), None when it is a
        loop or nothing qualifies."""
        best = None
        for a in self.arcs:
            if limit is None or a.label <= limit:
                best = a
        if best is None or best.is_loop():
            return None
        return best.arc()

    def is_loop_singleton(self):
        return len(self.arcs) == 1 and self.arcs[0].is_loop()

    def __eq__(self, other):
        return (
            isinstance(other, LabeledShell)
            and (self.arcs, self.n) == (other.arcs, other.n)
        )

    def __hash__(self):
        return hash((self.arcs, self.n))

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self):
        return len(self.arcs)

    def __repr__(self):
        return "LabeledShell(%r, n=%d)" % (list(self.arcs), self.n)


class ShellTableau:
    """A sequence of labeled shells over a common ground set."""

    __slots__ = ("shells", "n")

    def __init__(self, shells, n):
        self.shells = tuple(
            s if isinstance(s, LabeledShell) else LabeledShell(s, n) for s in shells
        )
        self.n = n

    @property
    def length(self):
        return len(self.shells)

    @property
    def size(self):
        return sum(len(s) for s in self.shells)

    def all_arcs(self):
        """(arc, shell index) pairs over the whole tableau."""
        return [(a, r) for r, s in enumerate(self.shells) for a in s]

    def __eq__(self, other):
        return (
            isinstance(other, ShellTableau)
            and (self.shells, self.n) == (other.shells, other.n)
        )

    def __hash__(self):
        return hash((self.shells, self.n))

    def __iter__(self):
        return iter(self.shells)

    def __repr__(self):
        return "ShellTableau(%r, n=%d)" % ([list(s.arcs) for s in self.shells], self.n)

    def to_json(self):
        return [
            [
                {"i": a.left, "l": a.right, "label": a.label, "orient": a.orient}
                for a in shell
            ]
            for shell in self.shells
        ]

    @classmethod
    def from_json(cls, obj, n):
        shells = [
            [LabeledArc(d["i"], d["l"], d["label"], d["orient"]) for d in shell]
            for shell in obj
        ]
        return cls(shells, n)


# -- generalized shells ---------------------------------------------------------


def is_generalized_shell(arcs, n):
    """True when the oriented arcs decompose as frown fans onto decreasing
    right anchors interleaved with smile fans from their maximal lefts."""
    frowns = sorted({a.arc() for a in arcs if a.orient == FROWN})
    smiles = sorted({a.arc() for a in arcs if a.orient == SMILE})
    if len(frowns) + len(smiles) != len(set(a.arc() for a in arcs)):
        return False  # same arc on both sides
    if not frowns:
        return False
    for a, b in frowns + smiles:
        if not 1 <= a < b <= n:
            return False

    # frown groups share a right anchor; anchors strictly decrease while
    # the left fans strictly increase
    groups = {}
    for i, l in frowns:
        groups.setdefault(l, set()).add(i)
    anchors = sorted(groups, reverse=True)  # min L_1 > min L_2 > ...
    if len(groups[anchors[0]]) != 1:
        return False  # I_1 = {i} is a singleton
    s = len(anchors)
    isets = [sorted(groups[l]) for l in anchors]
    for r in range(s - 1):
        if isets[r][-1] >= isets[r + 1][0]:
            return False  # need I_r < I_r+1 elementwise
        if anchors[r + 1] <= isets[r + 1][-1]:
            return False  # frown fans stay left of their anchor

    # smile groups hang from max I_r, targeting L_{r+1}
    sgroups = {}
    for i, m in smiles:
        sgroups.setdefault(i, set()).add(m)
    expected_lefts = [iset[-1] for iset in isets]
    slefts = sorted(sgroups)
    if slefts not in (expected_lefts[: s - 1], expected_lefts):
        return False  # s' = s or s + 1, no gaps
    for r, left in enumerate(slefts):
        targets = sgroups[left]
        if r + 1 < s:
            # L_{r+1} = smile targets plus the next anchor, which must be hit
            if anchors[r + 1] not in targets:
                return False
            full = targets
            if max(full) >= anchors[r]:
                return False  # L_{r+1} < L_r
            if min(full) <= isets[r + 1][-1] and min(full) < anchors[r + 1]:
                return False  # I_{r+1} <= L_{r+1}
        else:
            # trailing fan L_{s+1}: strictly inside the innermost anchor
            if max(targets) >= anchors[s - 1]:
                return False
            if min(targets) <= isets[s - 1][-1] and False:
                return False
    return True


# -- labeling rules --------------------------------------------------------------


def _labeling_ok(shell, strict):
    """Dimension-monotone labels; in the strict regime, conflicting arcs of
    the same orientation must not carry consecutive labels."""
    arcs = shell.non_loops()
    for a in arcs:
        for b in arcs:
            if a is b:
                continue
            da, db = dim([a.arc()]), dim([b.arc()])
            if da > db:
                if a.label > b.label:
                    return False
                if (
                    strict
                    and a.orient == b.orient
                    and (a.left == b.left or a.right == b.right)
                    and b.label == a.label + 1
                ):
                    return False
    return True


def _shell_structure_ok(shell):
    loops = [a for a in shell.arcs if a.is_loop()]
    if len(loops) > 1:
        return False
    if loops and len(shell.arcs) > 1:
        if loops[0].label != max(shell.labels()):
            return False
    non_loops = shell.non_loops()
    if not non_loops:
        return len(shell.arcs) == 1
    if not is_generalized_shell(non_loops, shell.n):
        return False
    if max(a.right for a in non_loops) != shell.n:
        return False  # every tableau shell is anchored at the last node
    return True


def _forcing_instances(tableau):
    """Conflict-forced inner arcs demanded by the cross-shell label rules.

    When an arc appears in another shell sharing the left (resp. right)
    endpoint of an arc that is still the top of its own shell, the very
    next label must sit on an arc nested under the shorter of the two, in
    the shell owning that shorter arc (a placeholder loop counts: the
    reattachment was vacuous).  Returns (ok, forced_labels).
    """
    arcs = [
        (a, r)
        for r, shell in enumerate(tableau.shells)
        for a in shell.non_loops()
    ]
    located = {}
    shell_labels = []
    for r, shell in enumerate(tableau.shells):
        shell_labels.append(sorted(shell.labels()))
        for a in shell:
            located[a.label] = (a, r)
    forced = set()

    def alive(a, ra, when):
        """No later arc entered a's shell before label `when`."""
        return not any(a.label < c < when for c in shell_labels[ra])

    def demand(host, label, pred):
        hit = located.get(label)
        if hit is None:
            return label > tableau.size  # the walk simply ended here
        c, rc = hit
        if rc != host:
            return False
        if not (c.is_loop() or pred(c)):
            return False
        forced.add(label)
        return True

    for a, ra in arcs:
        # shared left endpoint
        cands = [
            (b, rb)
            for b, rb in arcs
            if rb != ra and b.left == a.left and b.label > a.label
        ]
        if cands:
            b, rb = min(cands, key=lambda item: item[0].label)
            if b.right != a.right and alive(a, ra, b.label):
                v = min(a.right, b.right)
                host = ra if a.right == v else rb
                ok = demand(
                    host,
                    b.label + 1,
                    lambda c: c.right == v and a.left < c.left <= v,
                )
                if not ok:
                    return False, forced
        # shared right endpoint
        cands = [
            (b, rb)
            for b, rb in arcs
            if rb != ra and b.right == a.right and b.label > a.label
        ]
        if cands:
            b, rb = min(cands, key=lambda item: item[0].label)
            if b.left != a.left and alive(a, ra, b.label):
                u = max(a.left, b.left)
                host = ra if a.left == u else rb
                ok = demand(
                    host,
                    b.label + 1,
                    lambda c: c.left == u and u <= c.right < a.right,
                )
                if not ok:
                    return False, forced
    return True, forced


def is_shell_tableau(tableau, diagnose=False):
    """Validate a (strict) shell tableau; with diagnose=True return
    (ok, first violated condition or None)."""

    def out(ok, why=None):
        return (ok, why) if diagnose else ok

    shells = tableau.shells
    k = len(shells)
    if k == 0:
        return out(False, "empty tableau")

    # condition 1: interior shells are loop singletons or carry >= 2 arcs;
    # the last shell is a singleton ending at n
    for r, shell in enumerate(shells[:-1]):
        if len(shell) < 2 and not shell.is_loop_singleton():
            return out(False, "condition 1: shell %d is a non-loop singleton" % (r + 1))
    last = shells[-1]
    if len(last) != 1 or last.arcs[0].right != tableau.n:
        return out(False, "condition 1: last shell must be one arc ending at n")

    # condition 2: labels are exactly 1..N
    labels = sorted(a.label for shell in shells for a in shell)
    if labels != list(range(1, tableau.size + 1)):
        return out(False, "condition 2: labels are not 1..%d" % tableau.size)

    # condition 3: the (up to) two smallest labels of each shell precede
    # the next shell's smallest label
    for r in range(k - 1):
        nxt = shells[r + 1].min_label()
        if any(l >= nxt for l in sorted(shells[r].labels())[:2]):
            return out(False, "condition 3: shells %d/%d out of order" % (r + 1, r + 2))

    for r, shell in enumerate(shells):
        if not _shell_structure_ok(shell):
            return out(False, "shell %d is not a generalized shell" % (r + 1))
        if not _labeling_ok(shell, strict=True):
            return out(False, "shell %d is not strictly labeled" % (r + 1))

    # conditions 4 and 5: cross-shell conflicts force inner arcs, and every
    # inner arc must be forced
    ok, forced = _forcing_instances(tableau)
    if not ok:
        return out(False, "condition 4/5: a forced inner arc is missing")
    for r, shell in enumerate(shells):
        inner = sorted(shell.labels())[2:]
        for label in inner:
            arc = next(a for a in shell.arcs if a.label == label)
            if not arc.is_loop() and label not in forced:
                return out(False, "condition 4/5: arc labeled %d is unforced" % label)
    return out(True, None)


def is_semi_strict(obj):
    """Shell-tableau validity with the consecutive-label prohibition (and
    the forcing bookkeeping it supports) relaxed; also accepts one shell."""
    if isinstance(obj, LabeledShell):
        return _shell_structure_ok(obj) and _labeling_ok(obj, strict=False)
    shells = obj.shells
    k = len(shells)
    if k == 0:
        return False
    for shell in shells[:-1]:
        if len(shell) < 2 and not shell.is_loop_singleton():
            return False
    last = shells[-1]
    if len(last) != 1 or last.arcs[0].right != obj.n:
        return False
    labels = sorted(a.label for shell in shells for a in shell)
    if labels != list(range(1, obj.size + 1)):
        return False
    for r in range(k - 1):
        nxt = shells[r + 1].min_label()
        if any(l >= nxt for l in sorted(shells[r].labels())[:2]):
            return False
    return all(
        _shell_structure_ok(s) and _labeling_ok(s, strict=False) for s in shells
    )


# -- shapes ----------------------------------------------------------------------


def shape_at(a, tableau):
    """Arcs contributed by each shell's top non-loop label <= a."""
    out = set()
    for shell in tableau.shells:
        arc = shell.shape_arc(limit=a)
        if arc is not None:
            out.add(arc)
    return frozenset(out)


def shape(tableau):
    """The full shape, as a partition of [n]."""
    return SetPartition(tableau.n, shape_at(tableau.size, tableau))


# -- path -> tableau --------------------------------------------------------------


def _shape_arc_of(arcs):
    best = None
    for a in sorted(arcs, key=lambda x: x.label):
        best = a
    if best is None or best.is_loop():
        return None
    return best.arc()


def _find_host(shells, arc):
    hits = [r for r, entry in enumerate(shells) if _shape_arc_of(entry) == arc]
    if len(hits) != 1:
        raise TableauError("shape arc %r owned by %d shells" % (arc, len(hits)))
    return hits[0]


def _check_path_grounds(path):
    if len(path) % 2 == 0 or len(path) < 1:
        raise TableauError("a path has an odd number of entries")
    n = path[0].n
    if path[0].arcs:
        raise TableauError("paths start at the empty partition")
    for idx, sp in enumerate(path):
        want = n if idx % 2 == 0 else n - 1
        if sp.n != want:
            raise TableauError("entry %d has ground set [%d], expected [%d]" % (idx, sp.n, want))
    return n


def _restriction_step(shells, total, prev, cur, n):
    """Record one restriction half-step; returns the new label total."""
    if prev.arcs == cur.arcs:
        shells.append([_loop(n, total + 1)])
        return total + 1
    frowns = sorted(set(prev.arcs) - set(cur.arcs))
    smiles = sorted(set(cur.arcs) - set(prev.arcs))
    if is_shell(frowns, smiles, n) is None or frowns[0][1] != n:
        raise TableauError("consecutive path entries do not differ by a shell")
    t = len(frowns)
    for s, frown in enumerate(frowns):
        host = _find_host(shells, frown)
        if s < len(smiles):
            i, m = smiles[s]
            if i != frown[0]:
                raise TableauError("smile %r does not continue frown %r" % ((i, m), frown))
            shells[host].append(LabeledArc(i, m, total + 1 + s, SMILE))
        else:
            shells[host].append(_loop(n, total + 1 + s))
    shells.append([_loop(n, total + t + 1)])
    return total + t + 1


def _induction_step(shells, total, prev, cur, n):
    """Record one induction half-step; returns the new label total."""
    if prev.arcs == cur.arcs:
        return total
    frowns = sorted(set(cur.arcs) - set(prev.arcs))
    smiles = sorted(set(prev.arcs) - set(cur.arcs))
    if is_shell(frowns, smiles, n) is None or frowns[0][1] != n:
        raise TableauError("consecutive path entries do not differ by a shell")
    t = len(frowns)
    placeholder = shells[-1]
    if not (len(placeholder) == 1 and placeholder[0].is_loop() and placeholder[0].label == total):
        raise TableauError("induction step without a fresh placeholder shell")
    shells[-1] = [LabeledArc(frowns[0][0], frowns[0][1], total, FROWN)]
    for s in range(t - 1):
        host = _find_host(shells[:-1], smiles[s])
        shells[host].append(
            LabeledArc(frowns[s + 1][0], frowns[s + 1][1], total + 1 + s, FROWN)
        )
    total += t - 1
    if len(smiles) == t:
        # the innermost arc of prev vanished outright; blank out its shell
        host = _find_host(shells[:-1], smiles[t - 1])
        total += 1
        shells[host].append(_loop(n, total))
    return total


def path_to_tableau(path):
    """The tableau of a Bratteli path, built half-step by half-step."""
    n = _check_path_grounds(path)
    shells = []
    total = 0
    for idx in range(len(path) - 1):
        prev, cur = path[idx], path[idx + 1]
        if idx % 2 == 0:
            total = _restriction_step(shells, total, prev, cur, n)
        else:
            total = _induction_step(shells, total, prev, cur, n)
    return ShellTableau(shells, n)


# -- tableau -> path --------------------------------------------------------------


def tableau_to_path(tableau):
    """Invert path_to_tableau by reading shapes at label thresholds.

    Each shell's smallest label closes a restriction half-step; the run of
    frown labels just above it (inside already existing shells) closes the
    following induction half-step.
    """
    n = tableau.n
    shells = tableau.shells
    total = tableau.size
    by_label = {}
    for r, shell in enumerate(shells):
        for a in shell:
            if a.label in by_label:
                raise TableauError("duplicate label %d" % a.label)
            by_label[a.label] = (a, r)
    mins = [shell.min_label() for shell in shells]
    if mins != sorted(mins):
        raise TableauError("shells out of creation order")

    def valid_arcs(arcs):
        lefts = [a for a, _ in arcs]
        rights = [b for _, b in arcs]
        return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)

    path = [SetPartition(n)]
    for r, m in enumerate(mins):
        try:
            path.append(SetPartition(n - 1, shape_at(m - 1, tableau)))
        except ValueError as exc:
            raise TableauError("threshold %d is not a partition of [n-1]" % (m - 1)) from exc
        end = m
        while end + 1 <= total:
            arc, src = by_label[end + 1]
            if arc.orient == FROWN and src <= r:
                end += 1
            else:
                break
        if not valid_arcs(shape_at(end, tableau)):
            # the step ended by blanking out a shell: take its loop too
            arc, src = by_label.get(end + 1, (None, None))
            if arc is None or not arc.is_loop() or src > r:
                raise TableauError("threshold %d is not a partition of [n]" % end)
            end += 1
        try:
            path.append(SetPartition(n, shape_at(end, tableau)))
        except ValueError as exc:
            raise TableauError("threshold %d is not a partition of [n]" % end) from exc
    return tuple(path)


# -- q = 2 counting ----------------------------------------------------------------


def _slot_insertions(prev, cur, frowns, smiles):
    """Reattachment targets that cross a dropped frown above its own smile.

    For slot s the candidates are the right endpoints m of kept arcs (j,m)
    with j < i_s < m < l_s that do not also cross the slot's smile; each
    subset of them yields one semi-strict variant of the step.
    """
    kept = sorted(set(prev.arcs) & set(cur.arcs))
    slots = []
    for s, (fi, fl) in enumerate(frowns):
        low = smiles[s][1] if s < len(smiles) else fi
        targets = sorted(
            m for j, m in kept if j < fi < m < fl and m > low
        )
        slots.append((fi, targets))
    return slots


def semistrict_expansions(path):
    """All semi-strict tableaux over a path: one per choice of extra
    reattachment targets at each restriction slot, relabeled order-preservingly
    with every insertion placed immediately before its slot's closing arc."""
    n = _check_path_grounds(path)
    shells = []
    total = 0
    inserts = []  # (anchor label, left endpoint, candidate targets)
    for idx in range(len(path) - 1):
        prev, cur = path[idx], path[idx + 1]
        if idx % 2 == 0:
            if prev.arcs != cur.arcs:
                frowns = sorted(set(prev.arcs) - set(cur.arcs))
                smiles = sorted(set(cur.arcs) - set(prev.arcs))
                slots = _slot_insertions(prev, cur, frowns, smiles)
                for s, (left, targets) in enumerate(slots):
                    if targets:
                        anchor = total + 1 + s  # label of the slot's smile/loop
                        inserts.append((anchor, left, targets))
            total = _restriction_step(shells, total, prev, cur, n)
        else:
            total = _induction_step(shells, total, prev, cur, n)
    base = ShellTableau(shells, n)

    arc_at = {}
    for r, shell in enumerate(base.shells):
        for a in shell:
            arc_at[a.label] = (a, r)

    slot_left = {anchor: left for anchor, left, _ in inserts}

    def build(selection):
        """selection: dict anchor label -> chosen targets (descending)."""
        sequence = []
        for label in range(1, base.size + 1):
            arc, r = arc_at[label]
            for m in selection.get(label, ()):  # descending targets first
                sequence.append((LabeledArc(slot_left[label], m, 0, SMILE), r))
            sequence.append((arc, r))
        shells_out = [[] for _ in base.shells]
        for new_label, (arc, r) in enumerate(sequence, start=1):
            shells_out[r].append(LabeledArc(arc.left, arc.right, new_label, arc.orient))
        return ShellTableau(shells_out, n)

    # iterate over every subset tuple, empty selection first
    results = []

    def rec(i, selection):
        if i == len(inserts):
            results.append(build(selection))
            return
        anchor, left, targets = inserts[i]
        subsets = [()]
        # subsets in binary counting order over the sorted target list
        for mask in range(1, 1 << len(targets)):
            chosen = tuple(
                targets[b] for b in range(len(targets)) if mask >> b & 1
            )
            subsets.append(chosen)
        for chosen in subsets:
            sel = dict(selection)
            if chosen:
                sel[anchor] = tuple(sorted(chosen, reverse=True))
            rec(i + 1, sel)

    rec(0, {})
    return tuple(results)


def count_semistrict(lam, k, n, diagram=None):
    """Number of semi-strict tableaux of the given shape and length."""
    if diagram is None:
        diagram = bratteli.build(n, k)
    if not diagram.has_vertex(lam, k):
        return 1 if (k == 0 and not lam.arcs) else 0
    return sum(
        len(semistrict_expansions(p)) for p in bratteli.paths_to(diagram, lam, k)
    )
