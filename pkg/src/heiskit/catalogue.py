"""Deterministic families of test instances.

Everything is seeded so that two runs produce identical catalogues.
"""

from itertools import product
from math import gcd

import numpy as np

from .abelian import FiniteAbelianGroup, canonical_form, cyclic
from .bilinear import BilinearForm, is_separated
from .grouptable import TableGroup
from .heisenberg import HeisenbergGroup, mackey_weil
from .symplectic import standard_form

SEED = 20240607


def group_presentations(max_order):
    """Every order tuple (factors >= 2, any order of factors) with product <= ``max_order``."""
    out = [()]

    def rec(prefix, prod_):
        for n in range(2, max_order // prod_ + 1):
            t = prefix + (n,)
            out.append(t)
            rec(t, prod_ * n)

    rec((), 1)
    return [FiniteAbelianGroup(t) for t in sorted(out, key=lambda t: (len(t), t))]


def abelian_groups(max_order):
    """One invariant-factor presentation per isomorphism class of order <= ``max_order``."""
    seen = {}
    for G in group_presentations(max_order):
        C, _ = canonical_form(G)
        seen.setdefault(C.orders, C)
    return sorted(seen.values(), key=lambda G: (G.order, G.orders))


def _entry_choices(A, g):
    """Coordinates of elements of ``A`` whose order divides ``g``."""
    return [z.coords for z in A.elements() if g % z.order() == 0]


def random_form(E, F, A, rng):
    rows = []
    for e in E.orders:
        row = []
        for f in F.orders:
            choices = _entry_choices(A, gcd(e, f))
            row.append(choices[rng.integers(len(choices))])
        rows.append(row)
    return BilinearForm(E, F, A, rows)


def multiplication_heisenberg(n):
    """``H(Z_n, Z_n, Z_n, xy)``; for ``n = 2`` this is the dihedral group of order 8."""
    Z = cyclic(n)
    return HeisenbergGroup(BilinearForm(Z, Z, Z, [[1]]))


def non_mumford_example():
    """``H(Z2, Z2, Z2 x Z2, (xy, 0))``: separated, Mumford map not surjective."""
    Z = cyclic(2)
    return HeisenbergGroup(BilinearForm(Z, Z, FiniteAbelianGroup((2, 2)), [[(1, 0)]]))


def named_forms():
    forms = [multiplication_heisenberg(n).omega for n in (2, 3, 4)]
    forms.append(non_mumford_example().omega)
    for orders in [(2,), (3,), (2, 2), (4,)]:
        forms.append(mackey_weil(FiniteAbelianGroup(orders)).omega)
    return forms


def form_catalogue(count=120, max_order=8, seed=SEED):
    """``count`` distinct separated forms with ``|E|, |F|, |A| <= max_order``.

    The named forms come first, the rest are drawn with a seeded generator.
    """
    groups = [G for G in group_presentations(max_order) if G.order > 1]
    rng = np.random.default_rng(seed)
    out, seen = [], set()
    for w in named_forms():
        if max(w.E.order, w.F.order, w.A.order) <= max_order and w not in seen:
            seen.add(w)
            out.append(w)
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("form sampling did not converge")
        E, F, A = (groups[rng.integers(len(groups))] for _ in range(3))
        w = random_form(E, F, A, rng)
        if w in seen or not is_separated(w):
            continue
        seen.add(w)
        out.append(w)
    return out[:count]


def heisenberg_catalogue(max_order=128, count=120, seed=SEED):
    """Heisenberg groups from the form catalogue (plus Mackey-Weil groups) up to ``max_order``."""
    groups = []
    seen = set()
    for w in form_catalogue(count=count, seed=seed):
        G = HeisenbergGroup(w)
        if G.order <= max_order and w not in seen:
            seen.add(w)
            groups.append(G)
    for E in abelian_groups(8):
        G = mackey_weil(E)
        if G.order <= max_order and G.omega not in seen:
            seen.add(G.omega)
            groups.append(G)
    return groups


# Table groups

def cyclic_table(n):
    i = np.arange(n)
    return TableGroup((i[:, None] + i[None, :]) % n)


def dihedral_table(n):
    """Dihedral group of order ``2n``: ``r^a s^b`` at index ``a + n b``."""
    def mul(p, q):
        a, b = p % n, p // n
        c, d = q % n, q // n
        # r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
        return (a + (c if b == 0 else -c)) % n + n * ((b + d) % 2)

    return TableGroup([[mul(p, q) for q in range(2 * n)] for p in range(2 * n)])


def quaternion_table():
    """``Q8`` with elements ``1, -1, i, -i, j, -j, k, -k``."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def split(x):
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def mul(x, y):
        sx, ux = split(x)
        sy, uy = split(y)
        s = sx * sy
        if ux == "1":
            u = uy
        elif uy == "1":
            u = ux
        elif ux == uy:
            s, u = -s, "1"
        else:
            su, u = split(base[(ux, uy)])
            s *= su
        return u if s == 1 else "-" + u

    return TableGroup([[names.index(mul(x, y)) for y in names] for x in names])


def symmetric3_table():
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    index = {p: i for i, p in enumerate(perms)}
    return TableGroup([[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms])


def product_table(G, H):
    """Direct product, pair ``(g, h)`` at index ``g * |H| + h``."""
    n, m = G.n, H.n
    g, h = np.divmod(np.arange(n * m), m)
    return TableGroup(G.table[g[:, None], g[None, :]] * m + H.table[h[:, None], h[None, :]])


def class2_catalogue(max_order=64):
    """Named class-2 table groups of order <= ``max_order`` (abelian ones included)."""
    D4, Q8 = dihedral_table(4), quaternion_table()
    Z2 = cyclic_table(2)
    items = [
        ("Z4", cyclic_table(4)),
        ("Z2xZ2", product_table(Z2, Z2)),
        ("D4", D4),
        ("Q8", Q8),
        ("D4xZ2", product_table(D4, Z2)),
        ("Q8xZ2", product_table(Q8, Z2)),
        ("D4xZ4", product_table(D4, cyclic_table(4))),
        ("H(Z3)", TableGroup.from_heisenberg(multiplication_heisenberg(3))),
        ("H(Z4)", TableGroup.from_heisenberg(multiplication_heisenberg(4))),
        ("H(Z2,Z2,Z2xZ2)", TableGroup.from_heisenberg(non_mumford_example())),
        ("MW(Z2xZ2)", TableGroup.from_heisenberg(mackey_weil(FiniteAbelianGroup((2, 2))))),
    ]
    return [(name, G) for name, G in items if G.n <= max_order]


# Symplectic forms

def _alternating_slots(K):
    N = K.exponent
    return [(i, j, gcd(K.orders[i], K.orders[j])) for i in range(K.rank)
            for j in range(i + 1, K.rank)], N


def _alternating_form(K, slots, N, values):
    Z = cyclic(N)
    zero = Z.zero().coords
    M = [[zero] * K.rank for _ in range(K.rank)]
    for (i, j, g), c in zip(slots, values):
        v = c * (N // g) % N
        M[i][j] = (v,) if Z.rank else ()
        M[j][i] = ((-v) % N,) if Z.rank else ()
    return BilinearForm(K, K, Z, M)


def alternating_forms(K, limit=256, seed=SEED):
    """Every alternating form ``K x K -> Z_exp(K)`` if there are at most ``limit``,
    else ``limit`` seeded samples."""
    slots, N = _alternating_slots(K)
    total = 1
    for _, _, g in slots:
        total *= g
    if total <= limit:
        return [_alternating_form(K, slots, N, vals)
                for vals in product(*(range(g) for _, _, g in slots))]
    rng = np.random.default_rng(seed)
    return [_alternating_form(K, slots, N, [int(rng.integers(g)) for _, _, g in slots])
            for _ in range(limit)]


def symplectic_catalogue(max_A=12, limit=64, seed=SEED):
    """Separated alternating forms on ``K = A x A`` for every ``|A| <= max_A``.

    Each ``K`` is taken in two presentations (``A x A`` and its invariant
    factors); the standard form on ``A x dual(A)`` is always included.
    """
    Ks = {}
    for A in abelian_groups(max_A):
        K = A * A
        Ks.setdefault(K.orders, K)
        C, _ = canonical_form(K)
        Ks.setdefault(C.orders, C)
    out = []
    for K in sorted(Ks.values(), key=lambda K: (K.order, K.orders)):
        seen = set()
        for w in alternating_forms(K, limit=limit * 4, seed=seed):
            if len(seen) >= limit:
                break
            if w not in seen and is_separated(w):
                seen.add(w)
                out.append(w)
    for A in abelian_groups(max_A):
        out.append(standard_form(A))
    return out


def admits_symplectic_form(K):
    """Oracle: does some alternating ``K x K -> Z_exp(K)`` separate points?"""
    if K.order == 1:
        return True
    return any(is_separated(w) for w in alternating_forms(K, limit=10 ** 9))
