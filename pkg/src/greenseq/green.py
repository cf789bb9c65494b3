"""Green sequences: verification, induced permutations, exhaustive search.

A green sequence mutates only green vertices of the framed quiver; it is
maximal when the final state has every mutable vertex red.  A maximal green
sequence turns the framing into the co-framing up to a permutation of the
mutable vertices, which we extract and cross-check here.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import permutations as _all_permutations
from typing import Sequence

import numpy as np

from .quiver import (
    ExtendedQuiver,
    Permutation,
    Quiver,
    QuiverError,
    frame,
    green_vertices,
    matrix_mutate,
    permute_b_matrix,
    vertex_color,
)


class NotMaximalGreenError(QuiverError):
    """The given sequence is not a maximal green sequence."""


class NotAcyclicError(QuiverError):
    """The quiver has a directed cycle."""


class DepthGuardExceeded(QuiverError):
    """Search hit the length bound on a branch that still had green vertices."""

    def __init__(self, max_len: int, partial: tuple[tuple[int, ...], ...]):
        super().__init__(f"depth guard {max_len} exceeded on a still-green branch")
        self.max_len = max_len
        self.partial = partial


class NodeBoundExceeded(QuiverError):
    """Exchange-graph exploration exceeded the node bound."""


@dataclass(frozen=True)
class GreenStep:
    index: int
    vertex: int
    color: str


@dataclass(frozen=True)
class GreenTrace:
    """Record of applying a sequence to the framed quiver.

    ``steps`` stops at the first mutation of a non-green vertex; in that
    case ``violation_step`` names it and the final state is the one reached
    just before the offending mutation.
    """

    steps: tuple[GreenStep, ...]
    verdict: str  # "all-green" or "violation"
    violation_step: int | None
    final_colors: tuple[str, ...]
    final_state: ExtendedQuiver

    @property
    def is_green(self) -> bool:
        return self.verdict == "all-green"


@dataclass(frozen=True)
class MgsReport:
    is_green_sequence: bool
    is_maximal: bool
    induced: Permutation | None

    def __post_init__(self) -> None:
        assert (self.induced is not None) == self.is_maximal


def verify_green(q: Quiver, seq: Sequence[int]) -> GreenTrace:
    """Apply ``seq`` to frame(q), recording the color of each mutated vertex."""
    eq = frame(q)
    steps: list[GreenStep] = []
    for index, k in enumerate(seq, start=1):
        color = vertex_color(eq, k)
        steps.append(GreenStep(index, k, color))
        if color != "green":
            return GreenTrace(
                tuple(steps), "violation", index,
                tuple(vertex_color(eq, i) for i in range(1, eq.n + 1)), eq,
            )
        eq = matrix_mutate(eq, k)
    return GreenTrace(
        tuple(steps), "all-green", None,
        tuple(vertex_color(eq, i) for i in range(1, eq.n + 1)), eq,
    )


def _read_final_permutation(q: Quiver, eq: ExtendedQuiver) -> Permutation | None:
    """If eq = [B_{Q sigma} | -M(sigma)], return sigma; else None."""
    ext = eq.mat[:, eq.n :]
    images = [0] * eq.n
    for i in range(eq.n):
        cols = np.nonzero(ext[i])[0]
        if len(cols) != 1 or ext[i, cols[0]] != -1:
            return None
        images[i] = int(cols[0]) + 1
    try:
        sigma = Permutation(tuple(images))
    except QuiverError:
        return None
    if not np.array_equal(eq.mat[:, : eq.n], permute_b_matrix(q.b_matrix(), sigma)):
        return None
    return sigma


def is_maximal_green(q: Quiver, seq: Sequence[int]) -> MgsReport:
    """Check greenness and maximality; extract the induced permutation."""
    trace = verify_green(q, seq)
    if not trace.is_green:
        return MgsReport(False, False, None)
    if any(c != "red" for c in trace.final_colors):
        return MgsReport(True, False, None)
    sigma = _read_final_permutation(q, trace.final_state)
    if sigma is None:
        # All-red but not co-framed-up-to-permutation: cannot happen for
        # states reached from a framing; treat as corrupted input.
        raise QuiverError("all-red state is not a permuted co-framing")
    return MgsReport(True, True, sigma)


def induced_permutation(q: Quiver, seq: Sequence[int]) -> Permutation:
    """Permutation sigma with final matrix [B_{Q sigma} | -M(sigma)]."""
    report = is_maximal_green(q, seq)
    if not report.is_maximal:
        raise NotMaximalGreenError(f"{tuple(seq)} is not a maximal green sequence")
    assert report.induced is not None
    return report.induced


def acyclic_mgs(q: Quiver) -> tuple[int, ...]:
    """Source-order sequence for an acyclic quiver, smallest index first.

    Mutates each vertex exactly once, always at a vertex that is a source
    among the not-yet-mutated ones.
    """
    indeg = {v: 0 for v in range(1, q.n + 1)}
    outs: dict[int, list[int]] = {v: [] for v in range(1, q.n + 1)}
    for src, dst, _ in q.arrows:
        indeg[dst] += 1
        outs[src].append(dst)
    order: list[int] = []
    ready = sorted(v for v, d in indeg.items() if d == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in outs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    if len(order) != q.n:
        raise NotAcyclicError("quiver has a directed cycle")
    return tuple(order)


def enumerate_mgs(q: Quiver, max_len: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All maximal green sequences of ``q``, sorted lexicographically.

    Depth-first search over green moves from the framing.  Type-A input is
    of finite mutation type, so the search terminates unbounded; anything
    else must pass ``max_len`` explicitly.  Hitting the bound on a branch
    that still has a green vertex raises DepthGuardExceeded carrying the
    census found so far.
    """
    if max_len is None:
        from .typea import is_type_a

        if not is_type_a(q).verdict:
            raise QuiverError(
                "input is not recognized as type A: pass max_len to bound the search"
            )
    found: list[tuple[int, ...]] = []
    root = frame(q)
    stack: list[list] = [[root, green_vertices(root), 0]]
    prefix: list[int] = []
    while stack:
        top = stack[-1]
        eq, greens, idx = top
        if not greens:
            found.append(tuple(prefix))
        if not greens or idx >= len(greens):
            stack.pop()
            if prefix:
                prefix.pop()
            continue
        if max_len is not None and len(prefix) >= max_len:
            raise DepthGuardExceeded(max_len, tuple(sorted(found)))
        top[2] += 1
        k = greens[idx]
        prefix.append(k)
        nxt = matrix_mutate(eq, k)
        stack.append([nxt, green_vertices(nxt), 0])
    return tuple(sorted(found))


def first_mgs(q: Quiver, max_len: int | None = None) -> tuple[int, ...]:
    """Lexicographically first maximal green sequence, by early-exit search.

    Same walk as enumerate_mgs, stopping at the first all-red state; useful
    as a cheap independent oracle when the full census is not needed.
    """
    root = frame(q)
    stack: list[list] = [[root, green_vertices(root), 0]]
    prefix: list[int] = []
    while stack:
        top = stack[-1]
        eq, greens, idx = top
        if not greens:
            return tuple(prefix)
        if idx >= len(greens):
            stack.pop()
            if prefix:
                prefix.pop()
            continue
        if max_len is not None and len(prefix) >= max_len:
            raise DepthGuardExceeded(max_len, ())
        top[2] += 1
        k = greens[idx]
        prefix.append(k)
        nxt = matrix_mutate(eq, k)
        stack.append([nxt, green_vertices(nxt), 0])
    raise NotMaximalGreenError("search exhausted without an all-red state")


# ---------------------------------------------------------------------------
# Oriented exchange graph (green part)


@dataclass(frozen=True)
class ExchangeGraphSlice:
    """Green-mutation closure of the framed quiver.

    Nodes are distinct extended matrices (exact equality); edges carry the
    mutated green vertex.  Node 0 is the framing, the unique all-green
    state; sinks are the all-red states.
    """

    quiver: Quiver
    nodes: tuple[ExtendedQuiver, ...]
    edges: tuple[tuple[int, int, int], ...]  # (src index, vertex, dst index)
    source: int
    sinks: tuple[int, ...]

    def maximal_chain_count(self) -> int:
        """Number of source-to-sink directed paths."""
        succ: dict[int, list[int]] = {i: [] for i in range(len(self.nodes))}
        for src, _, dst in self.edges:
            succ[src].append(dst)
        memo: dict[int, int] = {}

        # depth-first with memo; the graph is a DAG because green mutation
        # strictly advances the c-vector fan.
        def count(i: int, stack: set[int]) -> int:
            if i in memo:
                return memo[i]
            if i in stack:
                raise QuiverError("green-move graph unexpectedly has a cycle")
            if not succ[i]:
                memo[i] = 1
                return 1
            stack.add(i)
            total = sum(count(j, stack) for j in succ[i])
            stack.remove(i)
            memo[i] = total
            return total

        return count(self.source, set())

    def iso_class_count(self) -> int:
        """Node count after identifying states that differ only by a
        relabelling of mutable vertices (frozen vertices fixed pointwise).

        Exhaustive over relabellings; intended for small fixtures only.
        """
        n = self.quiver.n
        if n > 8:
            raise QuiverError("iso classes are only computed for n <= 8")
        perms = [np.array(p) for p in _all_permutations(range(n))]
        keys = set()
        for node in self.nodes:
            best: bytes | None = None
            for p in perms:
                cand = node.mat[p][:, np.concatenate([p, np.arange(n, n + node.m)])]
                b = cand.tobytes()
                if best is None or b < best:
                    best = b
            keys.add(best)
        return len(keys)


def exchange_graph(q: Quiver, max_nodes: int = 10000) -> ExchangeGraphSlice:
    """Breadth-first closure of green moves with exact-matrix deduplication."""
    start = frame(q)
    nodes: list[ExtendedQuiver] = [start]
    index: dict[ExtendedQuiver, int] = {start: 0}
    edges: list[tuple[int, int, int]] = []
    sinks: list[int] = []
    queue = [0]
    while queue:
        i = queue.pop(0)
        eq = nodes[i]
        greens = green_vertices(eq)
        if not greens:
            sinks.append(i)
            continue
        for k in greens:
            nxt = matrix_mutate(eq, k)
            j = index.get(nxt)
            if j is None:
                if len(nodes) >= max_nodes:
                    raise NodeBoundExceeded(f"more than {max_nodes} nodes reachable")
                j = len(nodes)
                nodes.append(nxt)
                index[nxt] = j
                queue.append(j)
            edges.append((i, k, j))
    return ExchangeGraphSlice(q, tuple(nodes), tuple(edges), 0, tuple(sorted(sinks)))


def matrix_hash(eq: ExtendedQuiver) -> str:
    """Stable 16-hex-digit content hash of an extended matrix."""
    payload = f"extb {eq.n} {eq.m}\n".encode() + eq.mat.tobytes()
    return hashlib.sha256(payload).hexdigest()[:16]


def exchange_graph_dot(slice_: ExchangeGraphSlice) -> str:
    """DOT text for the slice; nodes named by content hash, edges by vertex."""
    names = [matrix_hash(node) for node in slice_.nodes]
    sink_set = set(slice_.sinks)
    lines = ["digraph exchange {"]
    for i in sorted(range(len(names)), key=lambda i: names[i]):
        marks = ""
        if i == slice_.source:
            marks = ', role="source"'
        elif i in sink_set:
            marks = ', role="sink"'
        lines.append(f'  "{names[i]}" [label="{names[i]}"{marks}];')
    for src, k, dst in sorted(slice_.edges, key=lambda e: (names[e[0]], e[1], names[e[2]])):
        lines.append(f'  "{names[src]}" -> "{names[dst]}" [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
