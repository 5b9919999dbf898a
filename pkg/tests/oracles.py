"""Brute-force oracles written from the definitions, independent of the library's algorithms."""

from itertools import product


def elements(orders):
    return list(product(*(range(n) for n in orders)))


def add(a, b, orders):
    return tuple((x + y) % n for x, y, n in zip(a, b, orders))


def neg(a, orders):
    return tuple((-x) % n for x, n in zip(a, orders))


def is_hom(f, E, A):
    """``f`` maps tuples of E to tuples of A additively."""
    return all(f(add(x, y, E)) == add(f(x), f(y), A) for x in elements(E) for y in elements(E))


def all_homs(E, A):
    """Every additive map ``E -> A`` as a value dictionary, found among all generator images."""
    out = []
    for images in product(elements(A), repeat=len(E)):
        def f(x, images=images):
            total = tuple(0 for _ in A)
            for c, img in zip(x, images):
                for _ in range(c):
                    total = add(total, img, A)
            return total
        if all(_scaled(images[k], E[k], A) == tuple(0 for _ in A) for k in range(len(E))):
            values = {x: f(x) for x in elements(E)}
            if is_hom(values.__getitem__, E, A):
                out.append(values)
    return out


def _scaled(a, k, orders):
    return tuple(x * k % n for x, n in zip(a, orders))


def center(table):
    n = len(table)
    return {g for g in range(n) if all(table[g][h] == table[h][g] for h in range(n))}


def inverse_map(table):
    n = len(table)
    return [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]


def derived(table):
    """Closure of all commutators ``g^-1 h^-1 g h``."""
    inv = inverse_map(table)
    n = len(table)
    comms = {table[table[table[inv[g]][inv[h]]][g]][h] for g in range(n) for h in range(n)}
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for c in comms:
                b = table[a][c]
                if b not in out:
                    out.add(b)
                    nxt.append(b)
        frontier = nxt
    return out


def element_order(table, g):
    k, p = 1, g
    while p != 0:
        p = table[p][g]
        k += 1
    return k


def heisenberg_product(g, h, omega, E, F, A):
    """The group law on raw coordinate tuples; ``omega`` takes tuples too."""
    (x, y, z), (x1, y1, z1) = g, h
    return add(x, x1, E), add(y, y1, F), add(add(z, z1, A), omega(x, y1), A)


def subgroups(elems, op, zero):
    """Every subgroup of a small abelian group, as frozensets (closure of every subset of gens)."""
    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for S in frontier:
            for x in elems:
                if x in S:
                    continue
                T = set(S)
                grow = [x]
                while grow:
                    a = grow.pop()
                    if a in T:
                        continue
                    T.add(a)
                    grow.extend(op(a, s) for s in list(T))
                T = frozenset(T)
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return found
