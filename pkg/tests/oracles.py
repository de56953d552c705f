"""Slow, literal re-implementations used as independent oracles.

Nothing here imports the package; tables are plain flat lists and every
law is evaluated by nested loops straight from its definition.
"""

from itertools import permutations, product


def bracket(flat, n):
    def br(a, b, c):
        return flat[(a * n + b) * n + c]
    return br


def literal_semiheap(flat, n):
    br = bracket(flat, n)
    for a, b, c, d, e in product(range(n), repeat=5):
        x = br(br(a, b, c), d, e)
        if x != br(a, br(d, c, b), e) or x != br(a, b, br(c, d, e)):
            return False
    return True


def literal_pairs(flat, n):
    br = bracket(flat, n)
    left = {(a, b) for a in range(n) for b in range(n) if all(br(a, b, x) == x for x in range(n))}
    right = {(a, b) for a in range(n) for b in range(n) if all(br(x, a, b) == x for x in range(n))}
    return left, right, left & right


def literal_warp(flat, n, eta):
    br = bracket(flat, n)
    return all(eta[br(a, eta[b], c)] == br(eta[a], b, eta[c]) for a, b, c in product(range(n), repeat=3))


def literal_switch(mul, n, phi):
    def m(x, y):
        return mul[x * n + y]
    return all(phi[m(m(a, phi[b]), c)] == m(m(phi[c], b), phi[a]) for a, b, c in product(range(n), repeat=3))


def literal_associative(mul, n):
    return all(mul[mul[a * n + b] * n + c] == mul[a * n + mul[b * n + c]] for a, b, c in product(range(n), repeat=3))


def literal_isomorphic(f1, f2, n):
    """Some bijection carrying bracket 1 onto bracket 2, by scanning all n!."""
    b1, b2 = bracket(f1, n), bracket(f2, n)
    for p in permutations(range(n)):
        if all(p[b1(a, b, c)] == b2(p[a], p[b], p[c]) for a, b, c in product(range(n), repeat=3)):
            return p
    return None


def relation_compose(r, s):
    """Diagrammatic composite of relations given as sets of pairs."""
    return {(x, z) for x, y in r for y2, z in s if y == y2}
