"""L-space certification for negative-definite plumbing trees by full paths.

Vertices carry weights m(v) < 0 in practice; the intersection form Q has m(v)
on the diagonal and 1 for each edge.  A characteristic vector K is stored by
its values K_v = <K, v>, with K_v = m(v) mod 2.

A full path starts in the box m + 2 <= K_v <= -m, stays in |K_v| <= -m, and
moves by picking v with K_v = -m(v) and adding 2 PD[v], which sends K_w to
K_w + 2 Q[v][w].  It ends once m <= K_v <= -m - 2 for every v.  The space is
an L-space exactly when the number of initial vectors admitting a full path
equals |det Q|.

Moves never lower an unpushed coordinate, so a vertex at its upper bound must
eventually be pushed, and two adjacent vertices at their bound kill every
continuation.  Pushes at non-adjacent vertices commute.  Hence from a given
initial vector all full paths end at the same vector, and following any one
order of pushes decides the outcome.  ``check_confluence=True`` explores every
order instead and verifies that claim.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvariantViolation

__all__ = [
    "PlumbingTree",
    "CharVector",
    "FullPathCount",
    "LSpaceVerdict",
    "NotNegativeDefinite",
    "ConfluenceError",
    "InvariantViolation",
    "determinant",
    "leading_minors",
    "is_negative_definite",
    "hj_expansion",
    "lens_chain",
    "e8",
    "seifert_to_plumbing",
    "parse_seifert",
    "count_full_paths",
    "lspace_certify",
    "char_square",
    "bad_vertices",
]

CharVector = tuple[int, ...]


class NotNegativeDefinite(ValueError):
    """The intersection form is not negative definite."""


class ConfluenceError(InvariantViolation):
    """Full paths from one initial vector reached different final vectors."""


@dataclass(frozen=True)
class PlumbingTree:
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = len(self.weights)
        if n == 0:
            raise ValueError("empty plumbing graph")
        edges = tuple(sorted((min(e), max(e)) for e in self.edges))
        if len(set(edges)) != len(edges):
            raise ValueError("repeated edge")
        if any(u == v or not (0 <= u < n and 0 <= v < n) for u, v in edges):
            raise ValueError("edge endpoint out of range or a loop")
        if len(edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "edges", edges)
        if len(self.bfs_order()) != n:
            raise ValueError("plumbing graph is not connected")

    @property
    def n(self) -> int:
        return len(self.weights)

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.weights]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def bfs_order(self, root: int = 0) -> list[int]:
        adj = self.neighbors()
        seen, order, todo = {root}, [], deque([root])
        while todo:
            v = todo.popleft()
            order.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return order

    def matrix(self) -> list[list[int]]:
        Q = [[0] * self.n for _ in range(self.n)]
        for v, m in enumerate(self.weights):
            Q[v][v] = m
        for u, v in self.edges:
            Q[u][v] = Q[v][u] = 1
        return Q

    @classmethod
    def from_json(cls, data: str | dict) -> "PlumbingTree":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["weights"]), tuple(tuple(e) for e in data.get("edges", [])))

    @classmethod
    def load(cls, path: str | Path) -> "PlumbingTree":
        return cls.from_json(Path(path).read_text())

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "edges": [list(e) for e in self.edges]}


def _bareiss(M: list[list[int]], pivot: bool) -> tuple[int, list[int]]:
    """Fraction-free elimination.  Returns (det, leading minors seen so far).

    Without pivoting the k-th pivot is the k-th leading principal minor; the
    run stops at the first zero one.
    """
    A = [row[:] for row in M]
    n = len(A)
    sign, prev, minors = 1, 1, []
    for k in range(n):
        if A[k][k] == 0:
            if not pivot:
                minors.append(0)
                return 0, minors
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0, minors
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        if not pivot:
            minors.append(A[k][k])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1], minors


def determinant(G: PlumbingTree) -> int:
    """det of the intersection form, exact."""
    return _bareiss(G.matrix(), pivot=True)[0]


def leading_minors(G: PlumbingTree) -> list[int]:
    return _bareiss(G.matrix(), pivot=False)[1]


def is_negative_definite(G: PlumbingTree) -> bool:
    """Sylvester: the k-th leading minor has sign (-1)^k."""
    minors = leading_minors(G)
    return len(minors) == G.n and all(
        d != 0 and (d > 0) == (k % 2 == 0) for k, d in enumerate(minors, start=1)
    )


def hj_expansion(p: int, q: int) -> list[int]:
    """p/q = a_1 - 1/(a_2 - 1/(...)) with every a_i >= 2.

    >>> hj_expansion(7, 4)
    [2, 4]
    """
    if not (p > q >= 1) or gcd(p, q) != 1:
        raise ValueError(f"need p > q >= 1 coprime, got ({p}, {q})")
    out = []
    while q:
        a = ceil(Fraction(p, q))
        out.append(a)
        p, q = q, a * q - p
    return out


def _chain(weights: Sequence[int], start: int) -> list[tuple[int, int]]:
    return [(start + i, start + i + 1) for i in range(len(weights) - 1)]


def lens_chain(p: int, q: int) -> PlumbingTree:
    """Linear plumbing with weights -a_i from the expansion of p/q; bounds L(p, q)."""
    ws = [-a for a in hj_expansion(p, q)]
    return PlumbingTree(tuple(ws), tuple(_chain(ws, 0)))


def seifert_to_plumbing(b: int, pairs: Iterable[tuple[int, int]]) -> PlumbingTree:
    """Star graph: center of weight b, one leg per (alpha, beta) with weights
    -a_i from the expansion of alpha/beta, the first a_i next to the center."""
    weights, edges = [b], []
    for alpha, beta in pairs:
        if alpha < 2 or not 0 < beta < alpha or gcd(alpha, beta) != 1:
            raise ValueError(f"bad Seifert pair alpha={alpha}, beta={beta}")
        leg = [-a for a in hj_expansion(alpha, beta)]
        start = len(weights)
        weights.extend(leg)
        edges.append((0, start))
        edges.extend(_chain(leg, start))
    return PlumbingTree(tuple(weights), tuple(edges))


def parse_seifert(text: str) -> tuple[int, list[tuple[int, int]]]:
    """``"b; beta1/alpha1, beta2/alpha2, ..."`` -> (b, [(alpha, beta), ...])."""
    head, _, tail = text.partition(";")
    try:
        b = int(head.strip())
        pairs = []
        for item in filter(None, (s.strip() for s in tail.split(","))):
            beta, alpha = item.split("/")
            pairs.append((int(alpha), int(beta)))
    except ValueError as exc:
        raise ValueError(f"cannot parse Seifert data {text!r}") from exc
    return b, pairs


def e8() -> PlumbingTree:
    """The E8 tree, all weights -2 (legs of lengths 1, 2, 4)."""
    return seifert_to_plumbing(-2, [(2, 1), (3, 2), (5, 4)])


class _Runner:
    """Push dynamics on a subset of vertices; unassigned neighbours are ignored."""

    def __init__(self, G: PlumbingTree):
        self.m = G.weights
        self.adj = G.neighbors()

    def run(self, K: list[int], active: Sequence[int], inside: set[int]) -> tuple[int, ...] | None:
        """Follow pushes in a fixed order; final vector, or None if the box is left."""
        m, adj = self.m, self.adj
        K = list(K)
        todo = [v for v in active if K[v] == -m[v]]
        while todo:
            v = todo.pop()
            if K[v] != -m[v]:
                continue
            # the push needs 4K_v + 4m(v) = 0; that is what keeps K.K fixed
            assert 4 * K[v] + 4 * m[v] == 0
            K[v] = m[v]
            for w in adj[v]:
                if w not in inside:
                    continue
                K[w] += 2
                if K[w] > -m[w]:
                    return None
                if K[w] == -m[w]:
                    todo.append(w)
        return tuple(K)

    def all_finals(self, K0: tuple[int, ...]) -> set[tuple[int, ...]]:
        """Every final vector reachable by any order of pushes (small trees only)."""
        m, adj = self.m, self.adj
        n = len(m)
        memo: dict[tuple[int, ...], frozenset] = {}
        stack = [(K0, False)]
        while stack:
            K, expanded = stack.pop()
            if K in memo:
                continue
            movable = [v for v in range(n) if K[v] == -m[v]]
            if not movable:
                memo[K] = frozenset([K])
                continue
            succ = []
            for v in movable:
                L = list(K)
                L[v] = m[v]
                ok = True
                for w in adj[v]:
                    L[w] += 2
                    ok = ok and L[w] <= -m[w]
                if ok:
                    succ.append(tuple(L))
            if expanded:
                memo[K] = frozenset().union(*(memo[s] for s in succ)) if succ else frozenset()
            else:
                stack.append((K, True))
                stack.extend((s, False) for s in succ if s not in memo)
        return set(memo[K0])


@dataclass(frozen=True)
class FullPathCount:
    initial_vectors: frozenset
    finals: dict

    @property
    def count(self) -> int:
        return len(self.initial_vectors)


def _box(m: int) -> range:
    return range(m + 2, -m + 1, 2)


def count_full_paths(G: PlumbingTree, prune: bool = True,
                     check_confluence: bool = False) -> FullPathCount:
    """Initial vectors that start a full path, with the final vector of each.

    ``prune`` builds initial vectors one vertex at a time (breadth-first order)
    and drops a partial assignment as soon as the pushes among the assigned
    vertices alone leave the box; extra pushes from the remaining vertices only
    raise coordinates further.  ``prune=False`` walks the whole initial box.
    """
    if not is_negative_definite(G):
        raise NotNegativeDefinite(f"intersection form of {G.weights} is not negative definite")
    runner = _Runner(G)
    n, m = G.n, G.weights
    everyone = set(range(n))
    finals: dict[CharVector, CharVector] = {}

    def accept(K: tuple[int, ...]) -> None:
        final = runner.run(list(K), range(n), everyone)
        if final is None:
            return
        if check_confluence:
            reach = runner.all_finals(K)
            if reach != {final}:
                raise ConfluenceError(f"initial vector {K} reaches {sorted(reach)}")
        finals[K] = final

    if not prune:
        for K in itertools.product(*(_box(w) for w in m)):
            accept(K)
    else:
        order = G.bfs_order()
        K = [0] * n

        def extend(depth: int, inside: set[int]) -> None:
            if depth == n:
                accept(tuple(K))
                return
            v = order[depth]
            inside.add(v)
            for val in _box(m[v]):
                K[v] = val
                if runner.run(K, order[: depth + 1], inside) is not None:
                    extend(depth + 1, inside)
            inside.discard(v)
            K[v] = 0

        extend(0, set())
    return FullPathCount(frozenset(finals), dict(sorted(finals.items())))


def bad_vertices(G: PlumbingTree) -> list[int]:
    """Vertices whose degree exceeds -m(v); the count criterion needs at most one."""
    adj = G.neighbors()
    return [v for v, m in enumerate(G.weights) if len(adj[v]) > -m]


@dataclass(frozen=True)
class LSpaceVerdict:
    lspace: bool
    det: int
    count: int | None
    method: str  # "seifert-fast-path" or "full-paths"

    def to_dict(self) -> dict:
        return {"lspace": self.lspace, "det": abs(self.det), "full_paths": self.count,
                "method": self.method}


def lspace_certify(G: PlumbingTree, seifert: tuple[int, Sequence] | None = None,
                   check_confluence: bool = False) -> LSpaceVerdict:
    """Certify via b <= -n for Seifert data, else by counting full paths.

    Each Spin^c structure contributes at least one initial vector, so the
    count is at least |det|, with equality exactly for L-spaces.  The count
    criterion is only established for trees with at most one bad vertex, which
    includes every Seifert star; other trees are refused.
    """
    if not is_negative_definite(G):
        raise NotNegativeDefinite(f"intersection form of {G.weights} is not negative definite")
    det = determinant(G)
    if seifert is not None:
        b, pairs = seifert
        if b <= -len(list(pairs)):
            return LSpaceVerdict(True, det, None, "seifert-fast-path")
    if len(bad_vertices(G)) > 1:
        raise ValueError("full-path criterion needs at most one bad vertex")
    count = count_full_paths(G, check_confluence=check_confluence).count
    if count < abs(det):
        raise InvariantViolation(f"full-path count {count} is below |det| = {abs(det)}")
    return LSpaceVerdict(count == abs(det), det, count, "full-paths")


def char_square(G: PlumbingTree, K: Sequence[int]) -> Fraction:
    """K.K = K^T Q^-1 K, exact; used to check that pushes preserve it."""
    n = G.n
    A = [[Fraction(x) for x in row] + [Fraction(K[i])] for i, row in enumerate(G.matrix())]
    for c in range(n):
        r = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[r] = A[r], A[c]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    x = [A[i][n] / A[i][i] for i in range(n)]
    return sum(K[i] * x[i] for i in range(n))
