"""Brute-force reference computations, deliberately independent of the fast paths."""

from itertools import combinations, permutations

from .actions import PermutationAut


def square_classes(X):
    """Edge classes under the transitive closure of "opposite in a chordless 4-cycle"."""
    parent = {frozenset(e): frozenset(e) for e in X.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(e, f):
        a, b = find(frozenset(e)), find(frozenset(f))
        if a != b:
            parent[b] = a

    for a in X.vertices:
        for b, d in combinations(X.neighbors(a), 2):
            if X.adjacent(b, d):
                continue
            for c in X.neighbors(b):
                if c != a and X.adjacent(c, d) and not X.adjacent(a, c):
                    union((a, b), (d, c))
                    union((b, c), (a, d))
    return {e: find(e) for e in parent}


def brute_automorphisms(X):
    """All adjacency-preserving vertex permutations (use on at most 8 vertices)."""
    vs = X.vertices
    edges = {frozenset(e) for e in X.edges}
    out = []
    for image in permutations(vs):
        table = dict(zip(vs, image))
        if all(frozenset((table[a], table[b])) in edges for a, b in X.edges):
            out.append(PermutationAut(table))
    return out


def group_closure(X, gens):
    """Every element of the permutation group generated by ``gens``."""
    ident = PermutationAut({v: v for v in X.vertices})
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g * h
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def coordinate_median(p, q, r):
    return tuple(sorted(t)[1] for t in zip(p, q, r))
