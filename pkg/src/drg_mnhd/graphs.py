"""Concrete graphs: construction, BFS distances, regularity detection, edge-list I/O."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import Disconnected, GraphFormatError, SizeLimit
from .params import IntersectionArray

DEFAULT_MAX_VERTICES = 5000

# Distance between vertices in different components.
UNREACHABLE = math.inf


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph backed by a dense read-only 0/1 adjacency matrix."""

    adjacency: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = np.array(self.adjacency, dtype=np.int64)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(A, A.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(A) != 0):
            raise ValueError("loops are not allowed")
        if np.any((A != 0) & (A != 1)):
            raise ValueError("adjacency must be 0/1")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], name: str = "") -> "Graph":
        A = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if A[u, v]:
                raise ValueError(f"duplicate edge {u} {v}")
            A[u, v] = A[v, u] = 1
        return cls(A, name)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbors(self, u: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[u])

    def edges(self):
        us, vs = np.nonzero(np.triu(self.adjacency))
        return list(zip(us.tolist(), vs.tolist()))

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def __repr__(self):
        return f"Graph({self.name or 'unnamed'}, n={self.vertex_count}, m={len(self.edges())})"


# --------------------------------------------------------------------------
# constructions

def _check_size(n: int, limit: int):
    if n > limit:
        raise SizeLimit(f"instance has {n} vertices, limit is {limit}")


def hamming(D: int, q: int, limit: int = DEFAULT_MAX_VERTICES) -> Graph:
    if D < 1 or q < 2:
        raise ValueError("hamming(D, q) needs D >= 1 and q >= 2")
    _check_size(q**D, limit)
    words = list(itertools.product(range(q), repeat=D))
    W = np.array(words)
    A = ((W[:, None, :] != W[None, :, :]).sum(axis=2) == 1).astype(np.int64)
    return Graph(A, f"hamming({D},{q})")


def hypercube(D: int, limit: int = DEFAULT_MAX_VERTICES) -> Graph:
    g = hamming(D, 2, limit)
    return Graph(g.adjacency, f"hypercube({D})")


def johnson(n: int, k: int, limit: int = DEFAULT_MAX_VERTICES) -> Graph:
    if not 0 < k < n:
        raise ValueError("johnson(n, k) needs 0 < k < n")
    _check_size(math.comb(n, k), limit)
    subsets = [frozenset(s) for s in itertools.combinations(range(n), k)]
    A = np.array([[int(len(s & t) == k - 1) for t in subsets] for s in subsets], dtype=np.int64)
    return Graph(A, f"johnson({n},{k})")


def cycle(n: int, limit: int = DEFAULT_MAX_VERTICES) -> Graph:
    if n < 3:
        raise ValueError("cycle(n) needs n >= 3")
    _check_size(n, limit)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle({n})")


def path(n: int, limit: int = DEFAULT_MAX_VERTICES) -> Graph:
    if n < 1:
        raise ValueError("path(n) needs n >= 1")
    _check_size(n, limit)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path({n})")


def complete(n: int, limit: int = DEFAULT_MAX_VERTICES) -> Graph:
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    _check_size(n, limit)
    A = np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)
    return Graph(A, f"complete({n})")


# Two antipodal poles 0 and 11, an upper pentagon 1..5 and a lower pentagon 6..10.
_ICOSAHEDRON_EDGES = (
    [(0, i) for i in range(1, 6)]
    + [(11, i) for i in range(6, 11)]
    + [(i, i % 5 + 1) for i in range(1, 6)]
    + [(i, (i - 5) % 5 + 6) for i in range(6, 11)]
    + [(i, i + 5) for i in range(1, 6)]
    + [(i, i % 5 + 6) for i in range(1, 6)]
)


def icosahedron() -> Graph:
    return Graph.from_edges(12, _ICOSAHEDRON_EDGES, "icosahedron")


_KINDS = {
    "hypercube": hypercube,
    "hamming": hamming,
    "johnson": johnson,
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "icosahedron": icosahedron,
}


def construct(kind: str, *args, **kwargs) -> Graph:
    """Build a named family member, e.g. ``construct("johnson", 6, 3)``."""
    try:
        factory = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {sorted(_KINDS)}") from None
    return factory(*args, **kwargs)


# --------------------------------------------------------------------------
# distances

@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Shortest-path distances; entries between components are :data:`UNREACHABLE`.

    ``dist`` holds integer distances where ``reachable`` is true and zero
    elsewhere, so the raw array never carries a sentinel into arithmetic.
    """

    dist: np.ndarray
    reachable: np.ndarray

    def __getitem__(self, uv):
        u, v = uv
        return int(self.dist[u, v]) if self.reachable[u, v] else UNREACHABLE

    @property
    def connected(self) -> bool:
        return bool(self.reachable.all())

    @property
    def diameter(self):
        return int(self.dist.max()) if self.connected else UNREACHABLE


def distances(g: Graph) -> DistanceMatrix:
    n = g.vertex_count
    dist = np.zeros((n, n), dtype=np.int64)
    reachable = np.zeros((n, n), dtype=bool)
    nbrs = [g.neighbors(u) for u in range(n)]
    for s in range(n):
        reachable[s, s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if not reachable[s, y]:
                    reachable[s, y] = True
                    dist[s, y] = dist[s, x] + 1
                    queue.append(y)
    return DistanceMatrix(dist, reachable)


def check_distance_regular(g: Graph, dm: Optional[DistanceMatrix] = None) -> Optional[IntersectionArray]:
    """Intersection array of ``g`` if it is distance-regular, else ``None``.

    Candidate constants come from vertex 0 and are then verified on every
    ordered pair.
    """
    dm = dm or distances(g)
    if not dm.connected:
        raise Disconnected(f"{g!r} is not connected")
    A = g.adjacency
    D = dm.diameter
    dist = dm.dist

    # counts[x, y, k]: neighbours of y at distance i-1, i, i+1 from x (k = 0, 1, 2)
    def counts_for(x):
        near = dist[x][None, :] == (dist[x][:, None] - 1)
        same = dist[x][None, :] == dist[x][:, None]
        far = dist[x][None, :] == (dist[x][:, None] + 1)
        return (A & near).sum(axis=1), (A & same).sum(axis=1), (A & far).sum(axis=1)

    c0, a0, b0 = counts_for(0)
    cand_c = [None] * (D + 1)
    cand_a = [None] * (D + 1)
    cand_b = [None] * (D + 1)
    for y in range(g.vertex_count):
        i = dist[0, y]
        if cand_c[i] is None:
            cand_c[i], cand_a[i], cand_b[i] = c0[y], a0[y], b0[y]
    cand_c = np.array(cand_c)
    cand_a = np.array(cand_a)
    cand_b = np.array(cand_b)
    for x in range(g.vertex_count):
        c, a, b = counts_for(x)
        i = dist[x]
        if not (np.array_equal(c, cand_c[i]) and np.array_equal(a, cand_a[i]) and np.array_equal(b, cand_b[i])):
            return None
    if D == 0:
        return IntersectionArray((), ())
    return IntersectionArray(
        [Fraction(int(x)) for x in cand_b[:D]],
        [Fraction(int(x)) for x in cand_c[1:]],
    )


def check_walk_regular(g: Graph, max_len: int) -> bool:
    """True iff ``diag(A**l)`` is constant for ``2 <= l <= max_len`` (exact integers)."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    A = g.adjacency.astype(object)
    P = A.copy()
    for _ in range(2, max_len + 1):
        P = P.dot(A)
        diag = np.diag(P)
        if any(x != diag[0] for x in diag):
            return False
    return True


# --------------------------------------------------------------------------
# edge-list files: first line "n m", then m lines "u v" with 0-based ids

def parse_edge_list(text: str, name: str = "") -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError(1, "empty file, expected header 'n m'")

    def ints(lineno, line, what):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(lineno, f"expected {what}, got {line!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer token in {line!r}") from None

    n, m = ints(1, lines[0], "header 'n m'")
    if n < 1 or m < 0:
        raise GraphFormatError(1, f"invalid header n={n} m={m}")
    body = [(i, ln) for i, ln in enumerate(lines[1:], start=2) if ln.strip()]
    if len(body) < m:
        raise GraphFormatError(len(lines) + 1, f"file truncated: expected {m} edges, found {len(body)}")
    if len(body) > m:
        raise GraphFormatError(body[m][0], f"more edge lines than the declared {m}")
    A = np.zeros((n, n), dtype=np.int64)
    for lineno, line in body:
        u, v = ints(lineno, line, "edge 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, f"vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(lineno, f"loop at vertex {u}")
        if A[u, v]:
            raise GraphFormatError(lineno, f"duplicate edge {u} {v}")
        A[u, v] = A[v, u] = 1
    return Graph(A, name)


def read_edge_list(path) -> Graph:
    path = Path(path)
    return parse_edge_list(path.read_text(), name=path.name)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.vertex_count} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g))
