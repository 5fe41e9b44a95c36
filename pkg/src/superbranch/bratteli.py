"""The weighted Bratteli diagram of iterated restriction and induction.

Level 0 holds the empty partition of [n]; even half-levels hold partitions
of [n] and odd half-levels partitions of [n-1].  Down-edges carry
restriction coefficients, up-edges induction coefficients, and the weight
of a path is the product of all its edge labels.  Multiplicities are
computed by dynamic programming over levels, without enumerating paths.
"""

from __future__ import annotations

import json
import os

from .branching import induce, restrict
from .coeffs import QMonomial, QPolynomial
from .setpartition import SetPartition, parse_partition

CACHE_ENV = "SUPERBRANCH_CACHE"


class BratteliDiagram:
    """Levels 0, 1/2, 1, ... k stored as 2k+1 sorted vertex rows plus one
    labeled edge band between consecutive rows."""

    __slots__ = ("n", "k", "levels", "edges")

    def __init__(self, n, k, levels, edges):
        self.n = n
        self.k = k
        self.levels = tuple(tuple(row) for row in levels)
        self.edges = tuple(dict(band) for band in edges)

    def vertices_at(self, halfsteps):
        """Vertex row at the given number of half-steps (0..2k)."""
        return self.levels[halfsteps]

    def has_vertex(self, sp, k):
        return sp in self.levels[2 * k]

    def label(self, halfsteps, src, dst):
        """Edge label between rows halfsteps and halfsteps+1, zero if absent."""
        return self.edges[halfsteps].get((src, dst), QMonomial.zero())

    def __repr__(self):
        return "BratteliDiagram(n=%d, k=%d, %d vertices, %d edges)" % (
            self.n,
            self.k,
            sum(len(row) for row in self.levels),
            sum(len(band) for band in self.edges),
        )


def build(n, k):
    """Construct the diagram by alternately restricting and inducing every
    vertex reachable from the trivial character."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    levels = [(SetPartition(n),)]
    edges = []
    for h in range(2 * k):
        band = {}
        targets = set()
        for src in levels[h]:
            comb = restrict(src) if h % 2 == 0 else induce(src, n)
            for dst, coeff in comb.items():
                band[(src, dst)] = coeff
                targets.add(dst)
        edges.append(band)
        levels.append(tuple(sorted(targets, key=lambda sp: sp.sort_key())))
    return BratteliDiagram(n, k, levels, edges)


def paths_to(diagram, lam, k):
    """Yield every path from level 0 to the vertex (lam, k), depth-first
    with children in canonical string order."""
    if 2 * k >= len(diagram.levels) or not diagram.has_vertex(lam, k):
        raise ValueError("no vertex (%r, %d) in diagram" % (lam, k))
    children = []
    for h in range(2 * k):
        step = {}
        for src, dst in diagram.edges[h]:
            step.setdefault(src, []).append(dst)
        for src in step:
            step[src].sort(key=lambda sp: sp.sort_key())
        children.append(step)

    # prune branches that cannot reach lam at level 2k
    reaches = [set() for _ in range(2 * k + 1)]
    reaches[2 * k].add(lam)
    for h in range(2 * k - 1, -1, -1):
        for src, dst in diagram.edges[h]:
            if dst in reaches[h + 1]:
                reaches[h].add(src)

    def rec(prefix, h):
        if h == 2 * k:
            yield tuple(prefix)
            return
        for dst in children[h].get(prefix[-1], ()):
            if dst in reaches[h + 1]:
                prefix.append(dst)
                yield from rec(prefix, h + 1)
                prefix.pop()

    start = diagram.levels[0][0]
    if start in reaches[0]:
        yield from rec([start], 0)


def path_weight(diagram, path):
    """Product of all edge labels along the path."""
    weight = QMonomial.one()
    for h in range(len(path) - 1):
        label = diagram.label(h, path[h], path[h + 1])
        if label.sign == 0:
            raise ValueError("missing edge at half-step %d" % h)
        weight = weight * label
    return weight


def multiplicity(diagram, lam, k):
    """Sum of path weights into (lam, k): the multiplicity of lam's
    supercharacter in the k-fold tensor space."""
    table = multiplicities(diagram, k)
    return table.get(lam, QPolynomial.zero())


def multiplicities(diagram, k):
    """Multiplicity of every vertex at integer level k, by level DP."""
    if 2 * k >= len(diagram.levels):
        raise ValueError("diagram too shallow for k=%d" % k)
    current = {diagram.levels[0][0]: QPolynomial.from_monomial(QMonomial.one())}
    for h in range(2 * k):
        nxt = {}
        for (src, dst), label in diagram.edges[h].items():
            if src in current:
                nxt[dst] = nxt.get(dst, QPolynomial.zero()) + current[src] * label
        current = nxt
    return current


def export_dot(diagram):
    """Deterministic DOT text, one rank per half-level."""
    lines = ["digraph bratteli {", "  rankdir=TB;", '  node [shape=box];']
    names = {}
    for h, row in enumerate(diagram.levels):
        level = "%g" % (h / 2)
        members = []
        for sp in row:
            name = "v%d_%s" % (h, (sp.sort_key() or "empty").replace("-", "_").replace(",", "__"))
            names[(h, sp)] = name
            label = sp.sort_key() or "{}"
            lines.append('  %s [label="%s"];' % (name, label))
            members.append(name)
        lines.append("  { rank=same; %s }  // k=%s" % ("; ".join(members), level))
    for h, band in enumerate(diagram.edges):
        for src, dst in sorted(band, key=lambda e: (e[0].sort_key(), e[1].sort_key())):
            label = band[(src, dst)].render()
            lines.append(
                '  %s -> %s [label="%s"];' % (names[(h, src)], names[(h + 1, dst)], label)
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- disk cache ----------------------------------------------------------------


def to_json(diagram):
    vertices = [
        {"level": h, "partition": sp.sort_key()}
        for h, row in enumerate(diagram.levels)
        for sp in row
    ]
    edges = [
        {
            "level": h,
            "from": src.sort_key(),
            "to": dst.sort_key(),
            "label": band[(src, dst)].to_json(),
        }
        for h, band in enumerate(diagram.edges)
        for src, dst in sorted(band, key=lambda e: (e[0].sort_key(), e[1].sort_key()))
    ]
    return {
        "version": 1,
        "n": diagram.n,
        "k": diagram.k,
        "vertices": vertices,
        "edges": edges,
    }


def from_json(obj):
    if obj.get("version") != 1:
        raise ValueError("unsupported cache version %r" % obj.get("version"))
    n, k = obj["n"], obj["k"]
    ground = lambda h: n if h % 2 == 0 else n - 1
    levels = [[] for _ in range(2 * k + 1)]
    for item in obj["vertices"]:
        h = item["level"]
        levels[h].append(parse_partition(item["partition"], ground(h)))
    edges = [{} for _ in range(2 * k)]
    for item in obj["edges"]:
        h = item["level"]
        src = parse_partition(item["from"], ground(h))
        dst = parse_partition(item["to"], ground(h + 1))
        edges[h][(src, dst)] = QMonomial.from_json(item["label"])
    return BratteliDiagram(n, k, levels, edges)


def cache_path(n, k, cache_dir):
    return os.path.join(cache_dir, "bratteli_n%d_k%d.json" % (n, k))


def load_or_build(n, k, cache_dir=None):
    """Build the diagram, round-tripping through the cache dir when given."""
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    if not cache_dir:
        return build(n, k)
    path = cache_path(n, k, cache_dir)
    if os.path.exists(path):
        with open(path) as fh:
            return from_json(json.load(fh))
    diagram = build(n, k)
    os.makedirs(cache_dir, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(to_json(diagram), fh, indent=1, sort_keys=True)
        fh.write("\n")
    return diagram
