"""Exact quivers, framed quivers, and mutation.

A quiver is a finite directed multigraph without loops or 2-cycles, with
vertices 1..n.  Framing adjoins one frozen vertex i' per mutable vertex i;
the frozen columns of the extended exchange matrix track c-vector data and
the green/red state of each mutable vertex.

All values here are immutable: every operation returns a new value and
leaves its inputs untouched, so instances can be shared freely between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

# Mutation adds products of entries; keeping inputs below 2^31 guarantees
# the int64 intermediate |b_ik|*b_kj cannot overflow.
_ENTRY_LIMIT = 2**31


class QuiverError(Exception):
    """Base class for errors raised by this package."""


class QuiverParseError(QuiverError):
    """Malformed quiver text input."""


class SignCoherenceError(QuiverError):
    """A frozen row is mixed-sign or all zero (state not reachable from a framing)."""


class EntryOverflowError(QuiverError):
    """Matrix entries grew beyond the supported exact range."""


# ---------------------------------------------------------------------------
# Quiver


@dataclass(frozen=True)
class Quiver:
    """Loop-free, 2-cycle-free integer multidigraph on vertices 1..n.

    ``arrows`` holds (src, dst, multiplicity) triples, sorted, with
    multiplicity >= 1 and at most one direction per vertex pair.
    """

    n: int
    arrows: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise QuiverError(f"vertex count must be positive, got {self.n}")
        seen: set[tuple[int, int]] = set()
        for src, dst, mult in self.arrows:
            if src == dst:
                raise QuiverError(f"loop at vertex {src}")
            if not (1 <= src <= self.n and 1 <= dst <= self.n):
                raise QuiverError(f"arrow {src} -> {dst} out of range 1..{self.n}")
            if mult < 1:
                raise QuiverError(f"arrow {src} -> {dst} has multiplicity {mult}")
            if (src, dst) in seen:
                raise QuiverError(f"duplicate arrow entry {src} -> {dst}")
            if (dst, src) in seen:
                raise QuiverError(f"2-cycle between {src} and {dst}")
            seen.add((src, dst))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[Sequence[int]]) -> "Quiver":
        """Build a quiver, summing repeated (src, dst) entries.

        Each item is (src, dst) or (src, dst, mult).  Opposite directions on
        the same pair are rejected, not cancelled.
        """
        counts: dict[tuple[int, int], int] = {}
        for item in arrows:
            if len(item) == 2:
                src, dst, mult = item[0], item[1], 1
            else:
                src, dst, mult = item[0], item[1], item[2]
            counts[(src, dst)] = counts.get((src, dst), 0) + mult
        return cls(n, tuple((s, d, m) for (s, d), m in counts.items()))

    def arrow_dict(self) -> dict[tuple[int, int], int]:
        return {(s, d): m for s, d, m in self.arrows}

    def multiplicity(self, src: int, dst: int) -> int:
        for s, d, m in self.arrows:
            if s == src and d == dst:
                return m
        return 0

    def b_matrix(self) -> np.ndarray:
        """Signed n x n exchange matrix: entry (i,j) = #(i->j) - #(j->i)."""
        mat = np.zeros((self.n, self.n), dtype=np.int64)
        for src, dst, mult in self.arrows:
            mat[src - 1, dst - 1] = mult
            mat[dst - 1, src - 1] = -mult
        return mat

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = {d for s, d, _ in self.arrows if s == v}
        out |= {s for s, d, _ in self.arrows if d == v}
        return tuple(sorted(out))

    def degree(self, v: int) -> int:
        """Number of distinct neighbors in the underlying graph."""
        return len(self.neighbors(v))

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        return iter(self.arrows)


def quiver_from_b_matrix(mat: np.ndarray) -> Quiver:
    """Read a quiver off a skew-symmetric integer matrix."""
    n = mat.shape[0]
    arrows = []
    for i in range(n):
        for j in range(n):
            if mat[i, j] > 0:
                arrows.append((i + 1, j + 1, int(mat[i, j])))
    return Quiver(n, tuple(arrows))


def mutate(q: Quiver, k: int) -> Quiver:
    """Mutate ``q`` at mutable vertex ``k`` by the three-step arrow rule.

    (1) for every 2-path i -> k -> j adjoin i -> j, (2) reverse all arrows
    at k, (3) cancel any 2-cycles.  Implemented directly on arrow counts so
    it stays an independent cross-check of the matrix formula.
    """
    if not (1 <= k <= q.n):
        raise QuiverError(f"mutation vertex {k} out of range 1..{q.n}")
    net: dict[tuple[int, int], int] = {}

    def add(src: int, dst: int, mult: int) -> None:
        if src > dst:
            src, dst, mult = dst, src, -mult
        net[(src, dst)] = net.get((src, dst), 0) + mult

    into_k = [(s, m) for s, d, m in q.arrows if d == k]
    out_of_k = [(d, m) for s, d, m in q.arrows if s == k]
    for s, d, m in q.arrows:
        if s == k or d == k:
            add(d, s, m)  # reversal at k
        else:
            add(s, d, m)
    for i, mi in into_k:
        for j, mj in out_of_k:
            add(i, j, mi * mj)  # composite of the 2-path i -> k -> j
    arrows = []
    for (a, b), m in net.items():
        if m > 0:
            arrows.append((a, b, m))
        elif m < 0:
            arrows.append((b, a, -m))
    return Quiver(q.n, tuple(arrows))


def subquiver(q: Quiver, vertices: Sequence[int]) -> tuple[Quiver, tuple[int, ...]]:
    """Full subquiver on ``vertices``, relabelled 1..len ascending.

    Returns the subquiver and the tuple mapping new index -> old vertex.
    """
    order = tuple(sorted(set(vertices)))
    index = {v: i + 1 for i, v in enumerate(order)}
    arrows = [
        (index[s], index[d], m) for s, d, m in q.arrows if s in index and d in index
    ]
    return Quiver(len(order), tuple(arrows)), order


# ---------------------------------------------------------------------------
# Extended (framed) quivers


@dataclass(frozen=True)
class ExtendedQuiver:
    """Integer exchange matrix with n mutable rows and n+m columns.

    Columns 1..n are mutable, columns n+1..n+m are frozen.  The mutable
    block is skew-symmetric.  The backing array is read-only.
    """

    n: int
    m: int
    mat: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.mat, dtype=np.int64)
        if mat.shape != (self.n, self.n + self.m):
            raise QuiverError(f"matrix shape {mat.shape} != ({self.n}, {self.n + self.m})")
        if not np.array_equal(mat[:, : self.n], -mat[:, : self.n].T):
            raise QuiverError("mutable block is not skew-symmetric")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtendedQuiver):
            return NotImplemented
        return self.n == other.n and self.m == other.m and np.array_equal(self.mat, other.mat)

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.mat.tobytes()))

    def entry(self, i: int, j: int, *, frozen: bool = False) -> int:
        """Entry for mutable row i and column j (frozen column j' if asked)."""
        col = self.n + j - 1 if frozen else j - 1
        return int(self.mat[i - 1, col])

    def exchangeable(self) -> np.ndarray:
        return self.mat[:, : self.n].copy()

    def extended_part(self) -> np.ndarray:
        return self.mat[:, self.n :].copy()

    def quiver(self) -> Quiver:
        """Quiver of the mutable block."""
        return quiver_from_b_matrix(self.mat[:, : self.n])


def frame(q: Quiver) -> ExtendedQuiver:
    """Adjoin frozen vertices with arrows i -> i': extended part = identity."""
    mat = np.hstack([q.b_matrix(), np.eye(q.n, dtype=np.int64)])
    return ExtendedQuiver(q.n, q.n, mat)


def coframe(q: Quiver) -> ExtendedQuiver:
    """Adjoin frozen vertices with arrows i' -> i: extended part = -identity."""
    mat = np.hstack([q.b_matrix(), -np.eye(q.n, dtype=np.int64)])
    return ExtendedQuiver(q.n, q.n, mat)


def mutate_matrix_inplace(mat: np.ndarray, k0: int) -> np.ndarray:
    """Matrix mutation at 0-based mutable index ``k0``; returns a new array.

    b'_ij = -b_ij when i = k or j = k, else b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2.
    """
    if int(np.abs(mat).max(initial=0)) >= _ENTRY_LIMIT:
        raise EntryOverflowError("entries exceed the exact 64-bit safe range")
    col = mat[:, k0]
    row = mat[k0, :]
    bump = (np.abs(col)[:, None] * row[None, :] + col[:, None] * np.abs(row)[None, :]) // 2
    out = mat + bump
    out[k0, :] = -mat[k0, :]
    out[:, k0] = -mat[:, k0]
    return out


def matrix_mutate(eq: ExtendedQuiver, k: int) -> ExtendedQuiver:
    """Mutate the extended matrix at mutable vertex ``k``."""
    if not (1 <= k <= eq.n):
        raise QuiverError(f"mutation vertex {k} is frozen or out of range 1..{eq.n}")
    return ExtendedQuiver(eq.n, eq.m, mutate_matrix_inplace(eq.mat.copy(), k - 1))


def apply_sequence(eq: ExtendedQuiver, seq: Sequence[int]) -> ExtendedQuiver:
    """Left fold of matrix mutation over ``seq`` (first entry applied first)."""
    mat = eq.mat.copy()
    for k in seq:
        if not (1 <= k <= eq.n):
            raise QuiverError(f"mutation vertex {k} is frozen or out of range 1..{eq.n}")
        mat = mutate_matrix_inplace(mat, k - 1)
    return ExtendedQuiver(eq.n, eq.m, mat)


def vertex_color(eq: ExtendedQuiver, i: int) -> str:
    """'green' or 'red' for mutable vertex i, from the sign of its frozen row."""
    if not (1 <= i <= eq.n):
        raise QuiverError(f"vertex {i} out of range 1..{eq.n}")
    row = eq.mat[i - 1, eq.n :]
    has_pos = bool((row > 0).any())
    has_neg = bool((row < 0).any())
    if has_pos and not has_neg:
        return "green"
    if has_neg and not has_pos:
        return "red"
    if not has_pos and not has_neg:
        raise SignCoherenceError(f"frozen row of vertex {i} is all zero")
    raise SignCoherenceError(f"frozen row of vertex {i} has mixed signs")


def all_colors(eq: ExtendedQuiver) -> tuple[str, ...]:
    return tuple(vertex_color(eq, i) for i in range(1, eq.n + 1))


def green_vertices(eq: ExtendedQuiver) -> tuple[int, ...]:
    return tuple(i for i in range(1, eq.n + 1) if vertex_color(eq, i) == "green")


# ---------------------------------------------------------------------------
# Permutations (right action: i * sigma)


@dataclass(frozen=True)
class Permutation:
    """Bijection on 1..n acting on the right; images[i-1] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise QuiverError(f"not a bijection on 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycle(cls, n: int, cycle: Sequence[int]) -> "Permutation":
        """Permutation of 1..n mapping cycle[t] to cycle[t+1] (cyclically)."""
        images = list(range(1, n + 1))
        for t, v in enumerate(cycle):
            images[v - 1] = cycle[(t + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def apply(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then ``other``."""
        return Permutation(tuple(other.images[v - 1] for v in self.images))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for i, v in enumerate(self.images):
            images[v - 1] = i + 1
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def matrix(self) -> np.ndarray:
        """0/1 matrix with entry (i, j) = 1 iff i maps to j."""
        mat = np.zeros((self.n, self.n), dtype=np.int64)
        for i, v in enumerate(self.images):
            mat[i, v - 1] = 1
        return mat

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each starting at its minimum, sorted by minimum."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen or self.apply(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            v = self.apply(start)
            while v != start:
                cyc.append(v)
                seen.add(v)
                v = self.apply(v)
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycs)


def permute_b_matrix(mat: np.ndarray, perm: Permutation) -> np.ndarray:
    """(B sigma)_{i,j} = B_{i*sigma, j*sigma} on an n x n matrix."""
    idx = np.array([perm.apply(i + 1) - 1 for i in range(perm.n)])
    return mat[np.ix_(idx, idx)]


# ---------------------------------------------------------------------------
# Text I/O


def parse_quiver(text: str) -> Quiver:
    """Parse the line-based quiver format.

    ``quiver <N>`` then ``arrow <i> <j> [<mult>]`` lines; '#' lines are
    comments; repeated (i, j) lines sum.  Loops and 2-cycles are rejected.
    """
    n: int | None = None
    counts: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "quiver":
            if n is not None:
                raise QuiverParseError(f"line {lineno}: duplicate quiver directive")
            if len(fields) != 2:
                raise QuiverParseError(f"line {lineno}: expected 'quiver <N>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise QuiverParseError(f"line {lineno}: bad vertex count {fields[1]!r}") from None
            if n < 1:
                raise QuiverParseError(f"line {lineno}: vertex count must be positive")
        elif fields[0] == "arrow":
            if n is None:
                raise QuiverParseError(f"line {lineno}: arrow before quiver directive")
            if len(fields) not in (3, 4):
                raise QuiverParseError(f"line {lineno}: expected 'arrow <i> <j> [<mult>]'")
            try:
                src, dst = int(fields[1]), int(fields[2])
                mult = int(fields[3]) if len(fields) == 4 else 1
            except ValueError:
                raise QuiverParseError(f"line {lineno}: non-integer arrow field") from None
            if not (1 <= src <= n and 1 <= dst <= n):
                raise QuiverParseError(f"line {lineno}: arrow {src} -> {dst} out of range 1..{n}")
            if src == dst:
                raise QuiverParseError(f"line {lineno}: loop at vertex {src}")
            if mult < 1:
                raise QuiverParseError(f"line {lineno}: multiplicity must be >= 1")
            counts[(src, dst)] = counts.get((src, dst), 0) + mult
        else:
            raise QuiverParseError(f"line {lineno}: unknown directive {fields[0]!r}")
    if n is None:
        raise QuiverParseError("missing quiver directive")
    for (src, dst) in counts:
        if (dst, src) in counts and src < dst:
            raise QuiverParseError(f"2-cycle between {src} and {dst}")
    return Quiver(n, tuple((s, d, m) for (s, d), m in counts.items()))


def serialize_quiver(q: Quiver) -> str:
    """Normalized text form: sorted arrows, multiplicity shown only when > 1."""
    lines = [f"quiver {q.n}"]
    for src, dst, mult in q.arrows:
        lines.append(f"arrow {src} {dst}" if mult == 1 else f"arrow {src} {dst} {mult}")
    return "\n".join(lines) + "\n"


def format_extended(eq: ExtendedQuiver) -> str:
    """`extb <n> <m>` header plus tab-separated integer rows."""
    lines = [f"extb {eq.n} {eq.m}"]
    for row in eq.mat:
        lines.append("\t".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"
