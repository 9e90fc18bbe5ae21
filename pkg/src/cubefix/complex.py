"""Cube complexes through their 1-skeleton median graphs.

Three backends share one oracle surface (``neighbors``, ``key``,
``distance``, ``dimension``):

* :class:`FiniteComplex`: an explicit graph; vertices are arbitrary hashables
  and the canonical order is input order.
* :class:`LatticeComplex`: the standard cubulation of Z^n; vertices are integer
  tuples ordered lexicographically.
* :class:`ProductComplex`: the product of two complexes; vertices are pairs.

Everything else here (intervals, geodesics, medians, cubes, balls) is written
against that surface, so it runs unchanged on every backend.
"""

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import BudgetExceeded, InvalidInput, MedianViolation, WindowRequired

BALL_CAP = 100_000


@dataclass(frozen=True)
class Cube:
    """An induced hypercube, stored as its canonically sorted vertex tuple."""

    vertices: tuple
    dim: int

    @property
    def vertex_set(self):
        return frozenset(self.vertices)

    def __contains__(self, v):
        return v in self.vertex_set

    def __len__(self):
        return len(self.vertices)


class CubeComplex:
    kind = None
    base = None

    def neighbors(self, v):
        raise NotImplementedError

    def key(self, v):
        raise NotImplementedError

    def contains(self, v):
        raise NotImplementedError

    def distance(self, x, y):
        raise NotImplementedError

    @property
    def dimension(self):
        raise NotImplementedError

    @property
    def is_finite(self):
        return False

    def adjacent(self, a, b):
        return self.distance(a, b) == 1

    def sort(self, vertices):
        return sorted(vertices, key=self.key)


class FiniteComplex(CubeComplex):
    kind = "finite"

    def __init__(self, vertices, edges, name=None, base=None):
        vertices = tuple(vertices)
        if not vertices:
            raise InvalidInput("a complex needs at least one vertex")
        self.vertices = vertices
        self.index = {v: i for i, v in enumerate(vertices)}
        if len(self.index) != len(vertices):
            raise InvalidInput("duplicate vertex")
        adj = [set() for _ in vertices]
        canon = set()
        for a, b in edges:
            if a not in self.index or b not in self.index:
                raise InvalidInput(f"edge {(a, b)!r} references an unknown vertex")
            i, j = self.index[a], self.index[b]
            if i == j:
                raise InvalidInput(f"loop at {a!r}")
            adj[i].add(j)
            adj[j].add(i)
            canon.add((min(i, j), max(i, j)))
        self._adj = [tuple(sorted(s)) for s in adj]
        self._adjsets = [frozenset(s) for s in adj]
        self.edges = tuple((vertices[i], vertices[j]) for i, j in sorted(canon))
        self.name = name
        self.base = vertices[0] if base is None else base
        if self.base not in self.index:
            raise InvalidInput(f"base vertex {self.base!r} not in complex")
        self._cache = {}

    def __repr__(self):
        return f"FiniteComplex({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __eq__(self, other):
        return (isinstance(other, FiniteComplex) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    @property
    def is_finite(self):
        return True

    def __len__(self):
        return len(self.vertices)

    def key(self, v):
        return self.index[v]

    def contains(self, v):
        return v in self.index

    def neighbors(self, v):
        vs = self.vertices
        return [vs[j] for j in self._adj[self.index[v]]]

    def adjacent(self, a, b):
        return self.index[b] in self._adjsets[self.index[a]]

    @property
    def distance_matrix(self):
        """All-pairs distances; ``-1`` marks disconnected pairs."""
        D = self._cache.get("D")
        if D is None:
            n = len(self.vertices)
            rows, cols = [], []
            for i, nb in enumerate(self._adj):
                rows.extend([i] * len(nb))
                cols.extend(nb)
            g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
            raw = shortest_path(g, directed=False, unweighted=True)
            D = np.where(np.isinf(raw), -1, raw).astype(np.int64)
            self._cache["D"] = D
        return D

    def is_connected(self):
        return bool((self.distance_matrix[0] >= 0).all())

    def distance(self, x, y):
        return int(self.distance_matrix[self.index[x], self.index[y]])

    @property
    def dimension(self):
        d = self._cache.get("dim")
        if d is None:
            d = max(c.dim for c in cubes(self))
            self._cache["dim"] = d
        return d


class LatticeComplex(CubeComplex):
    kind = "lattice"

    def __init__(self, rank):
        if rank < 1:
            raise InvalidInput("lattice rank must be positive")
        self.rank = rank
        self.base = (0,) * rank

    def __repr__(self):
        return f"LatticeComplex({self.rank})"

    def __eq__(self, other):
        return isinstance(other, LatticeComplex) and other.rank == self.rank

    def __hash__(self):
        return hash(("lattice", self.rank))

    def key(self, v):
        return v

    def contains(self, v):
        return isinstance(v, tuple) and len(v) == self.rank and all(type(c) is int for c in v)

    def neighbors(self, v):
        out = []
        for i in range(self.rank):
            for step in (-1, 1):
                out.append(v[:i] + (v[i] + step,) + v[i + 1:])
        out.sort()
        return out

    def distance(self, x, y):
        return sum(abs(a - b) for a, b in zip(x, y))

    @property
    def dimension(self):
        return self.rank


class ProductComplex(CubeComplex):
    kind = "product"

    def __init__(self, first, second):
        self.factors = (first, second)
        self.base = (first.base, second.base)

    def __repr__(self):
        return f"ProductComplex({self.factors[0]!r}, {self.factors[1]!r})"

    def __eq__(self, other):
        return isinstance(other, ProductComplex) and other.factors == self.factors

    def __hash__(self):
        return hash(("product",) + self.factors)

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    def key(self, v):
        return (self.factors[0].key(v[0]), self.factors[1].key(v[1]))

    def contains(self, v):
        return (isinstance(v, tuple) and len(v) == 2
                and self.factors[0].contains(v[0]) and self.factors[1].contains(v[1]))

    def neighbors(self, v):
        a, b = v
        out = [(x, b) for x in self.factors[0].neighbors(a)]
        out += [(a, y) for y in self.factors[1].neighbors(b)]
        return self.sort(out)

    def distance(self, x, y):
        return self.factors[0].distance(x[0], y[0]) + self.factors[1].distance(x[1], y[1])

    @property
    def dimension(self):
        return self.factors[0].dimension + self.factors[1].dimension


# -- generic oracle algorithms ----------------------------------------------

def distance(X, x, y):
    return X.distance(x, y)


def interval(X, x, y):
    """I(x, y) in canonical vertex order."""
    if isinstance(X, FiniteComplex):
        D = X.distance_matrix
        i, j = X.index[x], X.index[y]
        idx = np.nonzero(D[i] + D[j] == D[i, j])[0]
        return [X.vertices[k] for k in idx]
    n = X.distance(x, y)
    seen = {x}
    layer = [x]
    for step in range(n):
        nxt = []
        for u in layer:
            for w in X.neighbors(u):
                if w not in seen and X.distance(w, y) == n - step - 1:
                    seen.add(w)
                    nxt.append(w)
        layer = nxt
    return X.sort(seen)


def geodesic(X, x, y):
    """Greedy geodesic: always step to the canonically smallest closer neighbour."""
    path = [x]
    cur = x
    left = X.distance(x, y)
    while left:
        for w in X.neighbors(cur):
            if X.distance(w, y) == left - 1:
                cur = w
                break
        else:
            raise InvalidInput(f"no neighbour of {cur!r} moves towards {y!r}")
        path.append(cur)
        left -= 1
    return path


def median_candidates(X, x, y, z):
    if isinstance(X, FiniteComplex):
        D = X.distance_matrix
        i, j, k = X.index[x], X.index[y], X.index[z]
        mask = ((D[i] + D[j] == D[i, j]) & (D[j] + D[k] == D[j, k])
                & (D[i] + D[k] == D[i, k]))
        return [X.vertices[m] for m in np.nonzero(mask)[0]]
    dyz, dxz = X.distance(y, z), X.distance(x, z)
    return [w for w in interval(X, x, y)
            if X.distance(y, w) + X.distance(w, z) == dyz
            and X.distance(x, w) + X.distance(w, z) == dxz]


def median(X, x, y, z):
    found = median_candidates(X, x, y, z)
    if len(found) != 1:
        raise MedianViolation((x, y, z), len(found))
    return found[0]


def _interval_tensor(D, idx):
    """I[a, b, w] is true iff vertex w lies on a geodesic between idx[a] and idx[b]."""
    sub = D[idx]
    return (sub[:, None, :] + sub[None, :, :]) == D[np.ix_(idx, idx)][:, :, None]


def verify_median_graph(X):
    """Return ``None`` if X is a connected median graph, else the first bad triple.

    A disconnected graph is reported as the triple (base, u, u) where u is
    the first unreachable vertex.
    """
    D = X.distance_matrix
    n = len(X.vertices)
    if not X.is_connected():
        u = X.vertices[int(np.nonzero(D[0] < 0)[0][0])]
        return (X.vertices[0], u, u)
    idx = np.arange(n)
    I = _interval_tensor(D, idx)
    upper = np.triu(np.ones((n, n), dtype=bool))
    for i in range(n):
        counts = (I[i][:, None, :] & I & I[i][None, :, :]).sum(axis=2)
        bad = (counts != 1) & upper
        bad[:i, :] = False
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return (X.vertices[i], X.vertices[j], X.vertices[k])
    return None


def is_median_closed(X, vertices):
    """True iff the median of any three members of ``vertices`` is a member."""
    if not vertices:
        return True
    if isinstance(X, FiniteComplex):
        idx = np.array(sorted(X.index[v] for v in vertices))
        member = np.zeros(len(X.vertices), dtype=bool)
        member[idx] = True
        I = _interval_tensor(X.distance_matrix, idx)
        for a in range(len(idx)):
            mask = I[a][:, None, :] & I & I[a][None, :, :]
            has = mask.any(axis=2)
            med = mask.argmax(axis=2)
            if not member[med[has]].all():
                return False
        return True
    vs = X.sort(vertices)
    members = set(vs)
    return all(median(X, a, b, c) in members for a, b, c in combinations(vs, 3))


def convex_hull(X, vertices, cap=BALL_CAP):
    """Smallest interval-closed vertex set containing ``vertices``."""
    hull = list(dict.fromkeys(vertices))
    members = set(hull)
    done = 0
    while done < len(hull):
        w = hull[done]
        for u in hull[:done]:
            for m in interval(X, u, w):
                if m not in members:
                    members.add(m)
                    hull.append(m)
                    if len(hull) > cap:
                        raise BudgetExceeded(f"convex hull exceeds {cap} vertices")
        done += 1
    return X.sort(members)


def _common_neighbors(X, a, b):
    nb = set(X.neighbors(b))
    return [w for w in X.neighbors(a) if w in nb]


def cubes_at(X, u):
    """All induced cubes having ``u`` as a corner, smallest first."""
    nbrs = X.neighbors(u)
    m = len(nbrs)
    compat = [[False] * m for _ in range(m)]
    for i, j in combinations(range(m), 2):
        if any(w != u for w in _common_neighbors(X, nbrs[i], nbrs[j])):
            compat[i][j] = compat[j][i] = True

    cliques = []

    def grow(clique, start):
        cliques.append(clique)
        for j in range(start, m):
            if all(compat[i][j] for i in clique):
                grow(clique + [j], j + 1)

    grow([], 0)
    out = []
    for clique in cliques:
        corners = _complete_cube(X, u, [nbrs[i] for i in clique])
        if corners is not None:
            out.append(Cube(tuple(X.sort(corners)), len(clique)))
    out.sort(key=lambda c: (c.dim, [X.key(v) for v in c.vertices]))
    return out


def _complete_cube(X, u, dirs):
    k = len(dirs)
    pos = {0: u}
    for i, a in enumerate(dirs):
        pos[1 << i] = a
    for mask in sorted(range(1 << k), key=lambda s: bin(s).count("1")):
        if mask in pos:
            continue
        bits = [i for i in range(k) if mask >> i & 1]
        i, j = bits[0], bits[1]
        below = [pos[mask ^ (1 << b)] for b in bits]
        avoid = pos[mask ^ (1 << i) ^ (1 << j)]
        cands = [w for w in _common_neighbors(X, pos[mask ^ (1 << i)], pos[mask ^ (1 << j)])
                 if w != avoid and all(X.adjacent(w, b) for b in below)
                 and X.distance(u, w) == len(bits)]
        if not cands:
            return None
        pos[mask] = cands[0]
    corners = list(pos.values())
    if len(set(corners)) != 1 << k:
        return None
    for s, t in combinations(range(1 << k), 2):
        if X.adjacent(pos[s], pos[t]) != (bin(s ^ t).count("1") == 1):
            return None
    return corners


def cubes(X, window=None):
    """Every induced cube of a finite complex (or of a finite window of one)."""
    if window is not None:
        X = induced(X, window)
    elif not isinstance(X, FiniteComplex):
        raise WindowRequired(f"{X.kind} complexes are infinite; pass a vertex window")
    cached = X._cache.get("cubes")
    if cached is None:
        found = {}
        for u in X.vertices:
            for c in cubes_at(X, u):
                found.setdefault(c.vertex_set, c)
        cached = sorted(found.values(), key=lambda c: (c.dim, [X.key(v) for v in c.vertices]))
        X._cache["cubes"] = cached
    return list(cached)


def dimension(X):
    return X.dimension


def induced(X, vertices, name=None):
    """Induced finite subcomplex on ``vertices`` (canonical order kept)."""
    vs = X.sort(set(vertices))
    members = set(vs)
    edges = []
    for v in vs:
        kv = X.key(v)
        for w in X.neighbors(v):
            if w in members and X.key(w) > kv:
                edges.append((v, w))
    base = X.base if X.base in members else vs[0]
    return FiniteComplex(vs, edges, name=name, base=base)


def ball(X, v, r, cap=BALL_CAP):
    """Induced subcomplex on the vertices within distance ``r`` of ``v``."""
    seen = {v}
    frontier = [v]
    for _ in range(r):
        nxt = []
        for u in frontier:
            for w in X.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > cap:
                        raise BudgetExceeded(f"ball of radius {r} exceeds {cap} vertices")
        frontier = nxt
    sub = induced(X, seen)
    sub.base = v
    return sub


def bfs_layers(X, v, radius):
    """Yield (r, vertices at distance exactly r) for r = 0..radius."""
    seen = {v}
    layer = [v]
    for r in range(radius + 1):
        if not layer:
            return
        yield r, X.sort(layer)
        nxt = []
        for u in layer:
            for w in X.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        layer = nxt


def lattice_box(rank, lo, hi):
    """The finite window [lo, hi]^rank of Z^rank as an explicit complex."""
    L = LatticeComplex(rank)
    pts = _box_points(rank, lo, hi)
    return induced(L, pts)


def _box_points(rank, lo, hi):
    pts = [()]
    for _ in range(rank):
        pts = [p + (c,) for p in pts for c in range(lo, hi + 1)]
    return pts


def flatten_product(X, sep="|"):
    """A finite product as an explicit complex with ``a|b`` string vertex names."""
    if not (isinstance(X, ProductComplex) and X.is_finite):
        raise InvalidInput("only finite products can be flattened")
    A, B = X.factors
    if not isinstance(A, FiniteComplex):
        A = flatten_product(A, sep)
    if not isinstance(B, FiniteComplex):
        B = flatten_product(B, sep)
    names = {(a, b): f"{a}{sep}{b}" for a in A.vertices for b in B.vertices}
    vs = [names[a, b] for a in A.vertices for b in B.vertices]
    edges = [(names[a, b], names[a2, b]) for a, a2 in A.edges for b in B.vertices]
    edges += [(names[a, b], names[a, b2]) for a in A.vertices for b, b2 in B.edges]
    return FiniteComplex(vs, edges, base=names[A.base, B.base])
