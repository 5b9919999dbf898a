"""Self-dualities ``K -> dual(K)`` of finite abelian groups and their symplectic theory.

Values of the induced form ``b(x, y) = nabla(x)(y)`` live in Q/Z; in code
they are integer numerators over ``N = exponent(K)``.  The centerpiece is
:func:`symplectic_decompose`, which splits a separated alternating form
into hyperbolic pairs and returns an isomorphism ``phi: A x dual(A) -> K``
carrying the standard form ``((x, f), (y, g)) -> g(x) - f(y)`` onto ``b``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from .abelian import FiniteAbelianGroup, Homomorphism, cyclic, dual_group, subgroup_closure
from .bilinear import (BilinearForm, brute_force_alternating, forms_isomorphic,
                       is_alternating, is_separated)
from .config import check_bound, within_bound
from .errors import ConsistencyError, InputError, NotSymplectic, ParentMismatch
from .heisenberg import mackey_weil


def _numerators(w, N):
    """Matrix of numerators over ``N`` for a square form with cyclic (or trivial) target."""
    A = w.A
    if A.rank > 1:
        raise InputError(f"form values must lie in a cyclic group read inside Q/Z, got {A}")
    M = A.orders[0] if A.rank else 1
    out = []
    for row in w.matrix:
        out_row = []
        for v in row:
            q = Fraction(v[0] if v else 0, M)
            if N % q.denominator:
                raise InputError(f"form value {q} is not a multiple of 1/{N}")
            out_row.append(q.numerator * (N // q.denominator) % N)
        out.append(out_row)
    return out


class SelfDuality:
    """An isomorphism ``nabla: K -> dual(K)``; the form ``b`` is derived from it."""

    def __init__(self, K, nabla):
        self.dual = dual_group(K)
        if nabla.source != K or nabla.target != self.dual.group:
            raise InputError("nabla must map K to dual_group(K).group")
        if not nabla.is_bijective():
            raise InputError("nabla is not bijective")
        self.K = K
        self.nabla = nabla
        self.modulus = self.dual.modulus

    def __repr__(self):
        return f"SelfDuality({self.K}, {self.nabla.matrix})"

    @classmethod
    def from_form(cls, w):
        """Self-duality ``x -> b(x, .)`` of a square form with values in a cyclic group."""
        if not w.is_square:
            raise InputError("a self-duality needs a form on K x K")
        K = w.E
        N = K.exponent
        nums = _numerators(w, N)
        # character b(u_i, .) has dual coordinate b(u_i, u_j) / (N / e_j) in slot j
        matrix = [[nums[i][j] // (N // K.orders[j]) for i in range(K.rank)]
                  for j in range(K.rank)]
        return cls(K, Homomorphism(K, dual_group(K).group, matrix))

    @cached_property
    def form(self):
        """``b`` as a form ``K x K -> Z_N`` (numerators over ``N``)."""
        Z = cyclic(self.modulus)
        return BilinearForm.from_function(
            self.K, self.K, Z, lambda u, v: Z.element((self.dual.pair_int(self.nabla(u), v),) if Z.rank else ()))

    def b(self, x, y):
        if x.parent != self.K or y.parent != self.K:
            raise ParentMismatch("arguments must lie in K")
        return self.dual.pair(self.nabla(x), y)

    def residue_form(self, L):
        """``b`` with values in ``Z_L``, for a multiple ``L`` of the modulus."""
        if L % self.modulus:
            raise InputError(f"{L} is not a multiple of {self.modulus}")
        Z = cyclic(L)
        scale = L // self.modulus
        return BilinearForm(self.K, self.K, Z, [
            [(v[0] * scale,) if v else (() if not Z.rank else (0,)) for v in row]
            for row in self.form.matrix])

    @cached_property
    def value_table(self):
        """``|K| x |K|`` numerators over the modulus."""
        check_bound(self.K.order ** 2)
        return self.form.table()  # an index in Z_N is its numerator


def standard_form(A):
    """``((x, f), (y, g)) -> g(x) - f(y)`` on ``A x dual(A)`` with values in ``Z_exp(A)``."""
    D = dual_group(A)
    K = A * D.group
    Z = D.target
    r = A.rank

    def value(u, v):
        x, f = A.element(u.coords[:r]), D.group.element(u.coords[r:])
        y, g = A.element(v.coords[:r]), D.group.element(v.coords[r:])
        return D.evaluate(g, x) - D.evaluate(f, y)

    return BilinearForm.from_function(K, K, Z, value)


def standard_self_duality(A):
    return SelfDuality.from_form(standard_form(A))


def mumford_self_duality(G):
    """``(K, M)`` for a Heisenberg group whose Mumford map is a self-duality."""
    if G.A.rank > 1:
        raise InputError("the center must be cyclic to read the Mumford map in Q/Z")
    return SelfDuality.from_form(G.commutator_form())


def is_symplectic(d):
    """Alternating by the generator criterion, cross-checked by a scan under the bound."""
    fast = is_alternating(d.form)
    if within_bound(d.K.order) and fast != brute_force_alternating(d.form):
        raise ConsistencyError("generator criterion disagrees with the scan")
    return fast


def _isotropic(table, members):
    idx = np.fromiter(members, dtype=np.int64)
    return not table[idx[:, None], idx[None, :]].any()


def maximal_isotropic_extend(d, H):
    """Grow the isotropic subgroup ``H`` by lexicographically least admissible elements."""
    if H.parent != d.K:
        raise ParentMismatch("H is not a subgroup of K")
    K = d.K
    check_bound(K.order)
    table = d.value_table
    current = {K.index(h) for h in H}
    if not _isotropic(table, current):
        raise InputError("H is not isotropic")
    gens = list(H.generators)
    while True:
        members = np.fromiter(current, dtype=np.int64)
        ok = ~table[:, members].any(axis=1) & (np.diagonal(table) == 0)
        ok[members] = False
        candidates = np.flatnonzero(ok)
        if not len(candidates):
            break
        gens.append(K.element_at(int(candidates[0])))
        current = {K.index(x) for x in subgroup_closure(K, gens)}
    return subgroup_closure(K, gens)


@dataclass(frozen=True)
class SymplecticDecomposition:
    """``phi: A x dual(A) -> K`` with ``b(phi(x,f), phi(y,g)) = g(x) - f(y)``.

    ``pairs`` lists the hyperbolic pairs ``(x_t, y_t, m_t)`` in the order
    they were split off (largest order first).
    """

    K: FiniteAbelianGroup
    A: FiniteAbelianGroup
    phi: Homomorphism
    pairs: tuple = field(repr=False)
    verified: bool = True


def _as_form(d_or_w):
    if isinstance(d_or_w, SelfDuality):
        return d_or_w.form
    if isinstance(d_or_w, BilinearForm):
        return d_or_w
    raise InputError("expected a SelfDuality or a BilinearForm")


def symplectic_decompose(b):
    """Hyperbolic-pair peeling of a separated alternating form ``b`` on ``K``.

    Each step takes the lexicographically least ``x`` of maximal order ``m``
    in the remaining orthogonal summand, the least ``y`` with ``b(x, y)`` of
    order ``m``, rescales ``y`` so that ``b(x, y) = 1/m``, and projects the
    summand onto ``<x, y>^perp`` by ``z -> z + m b(y,z) x - m b(x,z) y``.
    """
    w = _as_form(b)
    if not w.is_square:
        raise InputError("decomposition needs a form on K x K")
    if not is_alternating(w):
        raise NotSymplectic("form is not alternating")
    if not is_separated(w):
        raise NotSymplectic("form is not separated")
    K = w.E
    N = K.exponent
    check_bound(K.order ** 2)
    num = np.array(_numerators(w, N), dtype=np.int64).reshape(K.rank, K.rank)
    C = K.coords_array()
    orders_arr = np.array(K.orders, dtype=np.int64)
    table = np.einsum("ai,ij,bj->ab", C, num, C) % N if K.rank else np.zeros((1, 1), dtype=np.int64)
    elem_order = np.array([K.element_at(i).order() for i in range(K.order)], dtype=np.int64)

    remaining = np.arange(K.order)
    pairs = []
    while len(remaining) > 1:
        m = int(elem_order[remaining].max())
        x = int(remaining[elem_order[remaining] == m].min())
        # b(x, y) has exact order m  <=>  numerator over N has gcd with N equal to N/m
        vals = table[x, remaining]
        exact = np.gcd(vals, N) == N // m
        if not exact.any():
            raise ConsistencyError(f"no partner of order {m} for element {K.element_at(x).coords}")
        y0 = int(remaining[exact].min())
        c = int(table[x, y0]) // (N // m)
        inv = pow(c, -1, m)
        y = K.index(inv * K.element_at(y0))
        if table[x, y] != N // m:
            raise ConsistencyError("rescaled partner does not pair to 1/m")
        xc, yc = C[x], C[y]
        z = C[remaining]
        r_yz = table[y, remaining] // (N // m)
        r_xz = table[x, remaining] // (N // m)
        proj = (z + r_yz[:, None] * xc - r_xz[:, None] * yc) % orders_arr
        image = np.unique(K.index_array(proj))
        if len(image) * m * m != len(remaining):
            raise ConsistencyError("projection does not split off a Z_m x Z_m block")
        if table[x, image].any() or table[y, image].any():
            raise ConsistencyError("projection is not orthogonal to the split pair")
        pairs.append((K.element_at(x), K.element_at(y), m))
        remaining = image

    pairs.reverse()
    A = FiniteAbelianGroup(tuple(m for _, _, m in pairs))
    D = dual_group(A)
    source = A * D.group
    phi = Homomorphism.from_images(source, K, [x for x, _, _ in pairs] + [y for _, y, _ in pairs])
    dec = SymplecticDecomposition(K, A, phi, tuple(pairs))
    if not verify_decomposition(w, dec):
        raise ConsistencyError("decomposition fails the standard identity")
    return dec


def verify_decomposition(w, dec):
    """Exact check of ``b(phi(x,f), phi(y,g)) = g(x) - f(y)`` at every point, plus bijectivity."""
    phi, K = dec.phi, dec.K
    if not phi.is_bijective():
        return False
    N = K.exponent
    std = standard_form(dec.A)
    if std.E != phi.source:
        return False
    P = phi.source.coords_array()
    n = len(P)
    check_bound(n * n)
    img = K.index_array(phi.apply_array(P))
    num = np.array(_numerators(w, N), dtype=np.int64).reshape(K.rank, K.rank)
    C = K.coords_array()[img]
    lhs = (np.einsum("ai,ij,bj->ab", C, num, C) % N) if K.rank else np.zeros((n, n), dtype=np.int64)
    std_num = np.array(_numerators(std, N), dtype=np.int64).reshape(P.shape[1], P.shape[1])
    rhs = (np.einsum("ai,ij,bj->ab", P, std_num, P) % N) if P.shape[1] else np.zeros((n, n), dtype=np.int64)
    return bool(np.array_equal(lhs, rhs))


def dualities_isomorphic(d1, d2):
    """Decide isomorphism of two symplectic self-dualities; returns ``(bool, witness)``.

    Both decompose to standard dualities; they are isomorphic exactly when
    the two ``A`` (invariant-factor presentations) coincide, and the witness
    ``phi2 o phi1^-1`` is then validated pointwise.
    """
    for d in (d1, d2):
        if not is_symplectic(d):
            raise NotSymplectic("only symplectic self-dualities are decided")
    dec1, dec2 = symplectic_decompose(d1), symplectic_decompose(d2)
    if dec1.A != dec2.A:
        return False, None
    witness = dec2.phi.compose(dec1.phi.inverse())
    if not validate_duality_isomorphism(d1, d2, witness):
        raise ConsistencyError("composed witness does not carry one form to the other")
    return True, witness


def validate_duality_isomorphism(d1, d2, xi):
    if xi.source != d1.K or xi.target != d2.K or not xi.is_bijective():
        return False
    X = d1.K.coords_array()
    n = len(X)
    check_bound(n * n)
    img = d2.K.index_array(xi.apply_array(X))
    L = lcm(d1.modulus, d2.modulus)
    lhs = d2.value_table[img[:, None], img[None, :]] * (L // d2.modulus)
    rhs = d1.value_table * (L // d1.modulus)
    return bool(np.array_equal(lhs % L, rhs % L))


def dualities_isomorphic_bruteforce(d1, d2):
    """Oracle: exhaustive witness search on the forms lifted to a common modulus."""
    L = lcm(d1.modulus, d2.modulus)
    return forms_isomorphic(d1.residue_form(L), d2.residue_form(L))


@dataclass(frozen=True)
class DualityRealization:
    """A Mackey-Weil group whose Mumford self-duality is isomorphic to ``duality``.

    ``phi`` maps ``G/Z(G) = A x dual(A)`` onto ``K``; ``cocycle`` is the
    bilinear cocycle ``((x,f),(y,g)) -> g(x)`` on ``A x dual(A)``.
    """

    duality: SelfDuality
    decomposition: SymplecticDecomposition
    group: object
    phi: Homomorphism
    cocycle: BilinearForm
    mumford_matches: bool
    cocycle_matches: bool
    degenerate: str | None = None


def _five_term(gamma_table, add, neg):
    """``-g(x,-x) - g(y,-y) + g(-x,-y) + g(x,y) + g(-x-y, x+y)`` over index arrays (additive)."""
    n = len(neg)
    idx = np.arange(n)
    x, y = idx[:, None], idx[None, :]
    s = add[x, y]
    return (-gamma_table[idx, neg][:, None] - gamma_table[idx, neg][None, :]
            + gamma_table[neg[x], neg[y]] + gamma_table[x, y] + gamma_table[neg[s], s])


def mumford_group_from_duality(d):
    """Realize a symplectic self-duality as the Mumford data of a Mackey-Weil group.

    Checks exactly that ``phi`` carries the Mumford map of the group onto
    ``nabla`` and that the five-term expression of the bilinear cocycle
    reproduces ``b`` at every pair of points.
    """
    if not is_symplectic(d):
        raise NotSymplectic("duality is not symplectic")
    dec = symplectic_decompose(d)
    G = mackey_weil(dec.A)
    if G.K != dec.phi.source:
        raise ConsistencyError("Mackey-Weil quotient does not match the decomposition domain")
    K = d.K
    N = d.modulus
    check_bound(K.order ** 2)
    mum = mumford_self_duality(G)
    if mum.modulus != N:
        raise ConsistencyError("Mumford modulus differs from the duality modulus")
    img = K.index_array(dec.phi.apply_array(G.K.coords_array()))
    mumford_matches = bool(np.array_equal(d.value_table[img[:, None], img[None, :]],
                                          mum.value_table))

    r = dec.A.rank
    zero = G.A.zero().coords
    gmat = [[zero] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            gmat[i][r + j] = G.omega.matrix[i][j]
    cocycle = BilinearForm(G.K, G.K, G.A, gmat)
    inv_img = np.empty_like(img)
    inv_img[img] = np.arange(len(img))
    gamma = cocycle.table()[inv_img[:, None], inv_img[None, :]]
    add = K.addition_table()
    neg = np.argmax(add == 0, axis=1)
    cocycle_matches = bool(np.array_equal(_five_term(gamma, add, neg) % N, d.value_table))
    if not (mumford_matches and cocycle_matches):
        raise ConsistencyError("realized group does not reproduce the self-duality")
    degenerate = "degenerate: abelian" if K.order == 1 else None
    return DualityRealization(d, dec, G, dec.phi, cocycle, mumford_matches, cocycle_matches,
                              degenerate)
