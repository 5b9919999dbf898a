"""Generalized Heisenberg groups ``H(E, F, A, omega)``.

Elements are triples ``(x, y, z)`` multiplied by

    (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + omega(x, y'))

The center is ``{0} x {0} x A`` whenever ``omega`` is separated, so the
quotient by the center is identified with ``K = E x F`` directly.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .abelian import GroupElement, Homomorphism, SubgroupView, cyclic, subgroup_closure
from .bilinear import BilinearForm, curry, evaluation_form, is_separated
from .config import MAX_TABLE_ORDER, check_bound, within_bound
from .errors import ConsistencyError, InputError, NotSeparated, ParentMismatch


@dataclass(frozen=True)
class HeisenbergElement:
    parent: "HeisenbergGroup"
    x: GroupElement
    y: GroupElement
    z: GroupElement

    def __repr__(self):
        return f"({self.x.coords}, {self.y.coords}, {self.z.coords})"

    def __mul__(self, other):
        return self.parent.multiply(self, other)

    def inverse(self):
        return self.parent.inverse(self)

    def is_identity(self):
        return self.x.is_zero() and self.y.is_zero() and self.z.is_zero()


class HeisenbergGroup:
    """``H(omega)`` for a separated bilinear ``omega: E x F -> A``."""

    def __init__(self, omega):
        if not isinstance(omega, BilinearForm):
            raise InputError("HeisenbergGroup needs a BilinearForm")
        if not is_separated(omega):
            raise NotSeparated(f"{omega} is not separated")
        self.omega = omega
        self.E, self.F, self.A = omega.E, omega.F, omega.A

    def __repr__(self):
        return f"HeisenbergGroup({self.E}, {self.F}, {self.A}, {self.omega.matrix})"

    def __eq__(self, other):
        return isinstance(other, HeisenbergGroup) and self.omega == other.omega

    def __hash__(self):
        return hash(self.omega)

    @property
    def order(self):
        return self.E.order * self.F.order * self.A.order

    @property
    def K(self):
        """``G / Z(G)``, identified with ``E x F``."""
        return self.E * self.F

    def element(self, x, y, z):
        x, y, z = (v if isinstance(v, GroupElement) else G.element(v)
                   for v, G in ((x, self.E), (y, self.F), (z, self.A)))
        if (x.parent, y.parent, z.parent) != (self.E, self.F, self.A):
            raise ParentMismatch("triple components lie in the wrong groups")
        return HeisenbergElement(self, x, y, z)

    def identity(self):
        return HeisenbergElement(self, self.E.zero(), self.F.zero(), self.A.zero())

    def elements(self):
        check_bound(self.order)
        for x in self.E.elements():
            for y in self.F.elements():
                for z in self.A.elements():
                    yield HeisenbergElement(self, x, y, z)

    def _check(self, *gs):
        for g in gs:
            if g.parent != self:
                raise ParentMismatch("element belongs to a different Heisenberg group")

    def multiply(self, g, h):
        self._check(g, h)
        return HeisenbergElement(self, g.x + h.x, g.y + h.y, g.z + h.z + self.omega(g.x, h.y))

    def inverse(self, g):
        self._check(g)
        return HeisenbergElement(self, -g.x, -g.y, -g.z + self.omega(g.x, g.y))

    def commutator(self, g, h):
        """``g^-1 h^-1 g h = (0, 0, omega(x, y') - omega(x', y))``."""
        self._check(g, h)
        return HeisenbergElement(self, self.E.zero(), self.F.zero(),
                                 self.omega(g.x, h.y) - self.omega(h.x, g.y))

    def index(self, g):
        return (self.E.index(g.x) * self.F.order + self.F.index(g.y)) * self.A.order + self.A.index(g.z)

    def element_at(self, i):
        i, iz = divmod(i, self.A.order)
        ix, iy = divmod(i, self.F.order)
        return HeisenbergElement(self, self.E.element_at(ix), self.F.element_at(iy),
                                 self.A.element_at(iz))

    def cayley_table(self):
        """Multiplication table over :meth:`elements` order; the identity is index 0."""
        n = self.order
        if n > MAX_TABLE_ORDER:
            raise InputError(f"group of order {n} is above the table limit {MAX_TABLE_ORDER}")
        check_bound(n)
        return self._table

    @cached_property
    def _table(self):
        nF, nA = self.F.order, self.A.order
        idx = np.arange(self.order)
        rest, iz = np.divmod(idx, nA)
        ix, iy = np.divmod(rest, nF)
        addE, addF, addA = self.E.addition_table(), self.F.addition_table(), self.A.addition_table()
        om = self.omega.table()
        X = addE[ix[:, None], ix[None, :]]
        Y = addF[iy[:, None], iy[None, :]]
        Z = addA[addA[iz[:, None], iz[None, :]], om[ix[:, None], iy[None, :]]]
        table = (X * nF + Y) * nA + Z
        table.flags.writeable = False
        return table

    def commutator_form(self):
        """Factorized commutator ``B((x,y),(x',y')) = omega(x,y') - omega(x',y)`` on ``K x K``."""
        K, A = self.K, self.A
        rE, rF = self.E.rank, self.F.rank
        zero = A.zero().coords
        matrix = [[zero] * (rE + rF) for _ in range(rE + rF)]
        for i in range(rE):
            for j in range(rF):
                w = A.element(self.omega.matrix[i][j])
                matrix[i][rE + j] = w.coords
                matrix[rE + j][i] = (-w).coords
        return BilinearForm(K, K, A, matrix)

    def pair_to_K(self, x, y):
        return self.K.element(x.coords + y.coords)

    def split_K(self, k):
        rE = self.E.rank
        return self.E.element(k.coords[:rE]), self.F.element(k.coords[rE:])


@dataclass(frozen=True)
class CenterDerived:
    """Center ``{0}x{0}xA`` and derived subgroup ``{0}x{0}x<im omega>`` as subgroups of ``A``."""

    center: SubgroupView
    derived: SubgroupView
    verified: bool


def center_and_derived(G):
    """Formula-derived center and derived subgroup, verified by enumeration under the bound."""
    center = subgroup_closure(G.A, G.A.gens())
    derived = subgroup_closure(G.A, G.omega.image_generators())
    if G.order > MAX_TABLE_ORDER or not within_bound(G.order):
        return CenterDerived(center, derived, verified=False)
    scanned_center, scanned_derived = _scan_center_derived(G.cayley_table())
    # (0, 0, z) sits at index A.index(z)
    expect_center = {G.A.index(z) for z in center}
    expect_derived = {G.A.index(z) for z in derived}
    if scanned_center != expect_center or scanned_derived != expect_derived:
        raise ConsistencyError(f"center/derived formulas disagree with enumeration for {G}")
    return CenterDerived(center, derived, verified=True)


def _scan_center_derived(T):
    center = set(np.flatnonzero((T == T.T).all(axis=1)).tolist())
    inv = np.argmax(T == 0, axis=1)  # identity is index 0
    comm = T[T[inv[:, None], inv[None, :]], T]
    derived = {0}
    frontier = [0]
    gens = sorted(set(np.unique(comm).tolist()))
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = int(T[a, g])
                if b not in derived:
                    derived.add(b)
                    nxt.append(b)
        frontier = nxt
    return center, derived


def mumford_map(G):
    """``M: K -> Hom(K, A)``, ``M(x,y)(x',y') = omega(x,y') - omega(x',y)``.

    The target is ``hom_group(G.K, G.A).group``.
    """
    return curry(G.commutator_form(), "left")


@dataclass(frozen=True)
class MumfordReport:
    mumford: bool
    omega_E_bijective: bool
    omega_F_bijective: bool


def is_mumford_group(G):
    """Bijectivity of the Mumford map and of both curried maps, computed independently."""
    return MumfordReport(
        mumford=mumford_map(G).is_bijective(),
        omega_E_bijective=curry(G.omega, "left").is_bijective(),
        omega_F_bijective=curry(G.omega, "right").is_bijective(),
    )


def standard_heisenberg(E, A):
    """``H(E, Hom(E, A), A, eval)``; fails when ``omega_E`` is not injective."""
    omega = evaluation_form(E, A)
    if not curry(omega, "left").is_injective():
        raise NotSeparated(f"Hom({E}, {A}) does not separate the points of {E}")
    return HeisenbergGroup(omega)


def mackey_weil(E):
    """The standard Heisenberg group over ``E`` and its character group ``Hom(E, Z_exp(E))``."""
    return standard_heisenberg(E, cyclic(E.exponent))


def is_reflexive(E, A):
    """Is ``E -> Hom(Hom(E, A), A)``, ``x -> (f -> f(x))``, bijective?"""
    return curry(evaluation_form(E, A), "left").is_bijective()


@dataclass(frozen=True)
class Embedding:
    """An injective homomorphism ``iota: G -> H(E, A)`` or ``G -> H(F, A)``."""

    source: HeisenbergGroup
    target: HeisenbergGroup
    side: str
    curried: Homomorphism
    injective: bool
    bijective: bool
    verified: bool

    def __call__(self, g):
        if g.parent != self.source:
            raise ParentMismatch("element is not in the embedded group")
        T = self.target
        if self.side == "E":
            return T.element(g.x, self.curried(g.y), g.z)
        return T.element(g.y, -self.curried(g.x), g.z - self.source.omega(g.x, g.y))

    def index_map(self):
        return np.array([self.target.index(self(g)) for g in self.source.elements()], dtype=np.int64)


def embed_standard(G, side="E"):
    """Embed ``G`` in ``H(E, A)`` via ``(x,y,z) -> (x, omega_F(y), z)`` (side E), or in
    ``H(F, A)`` via ``(x,y,z) -> (y, -omega_E(x), z - omega(x,y))`` (side F).
    """
    if side == "E":
        target = standard_heisenberg(G.E, G.A)
        curried = curry(G.omega, "right")
    elif side == "F":
        target = standard_heisenberg(G.F, G.A)
        curried = curry(G.omega, "left")
    else:
        raise InputError(f"side must be 'E' or 'F', got {side!r}")
    injective = curried.is_injective()
    bijective = injective and curried.is_bijective()
    emb = Embedding(G, target, side, curried, injective, bijective, verified=False)
    if target.order <= MAX_TABLE_ORDER and within_bound(target.order):
        phi = emb.index_map()
        S, T = G.cayley_table(), target.cayley_table()
        if not np.array_equal(phi[S], T[phi[:, None], phi[None, :]]):
            raise ConsistencyError("standard embedding is not a homomorphism")
        if len(set(phi.tolist())) != G.order:
            raise ConsistencyError("standard embedding is not injective")
        emb = Embedding(G, target, side, curried, injective, bijective, verified=True)
    return emb


def heisenberg_from_matrix(E, F, A, matrix):
    return HeisenbergGroup(BilinearForm(E, F, A, matrix))


def element_order_profile(G):
    """``{order: count}`` over all elements, computed from the Cayley table."""
    T = G.cayley_table() if isinstance(G, HeisenbergGroup) else G
    n = len(T)
    profile = {}
    for g in range(n):
        k, p = 1, g
        while p != 0:
            p = int(T[p, g])
            k += 1
        profile[k] = profile.get(k, 0) + 1
    return dict(sorted(profile.items()))


def isomorphism_to_dual_mackey_weil(E):
    """Explicit isomorphism ``H(E) -> H(dual E)``, ``(x, f, z) -> (-f, ev(x), z - f(x))``.

    Returns the index map; ``ev: E -> Hom(Hom(E, A), A)`` is the double curry.
    """
    G = mackey_weil(E)
    D = G.F
    H = standard_heisenberg(D, G.A)
    ev = curry(evaluation_form(E, G.A), "left")
    if ev.target != H.F:
        raise ConsistencyError("double dual presentation mismatch")
    image = [H.index(H.element(-g.y, ev(g.x), g.z - G.omega(g.x, g.y))) for g in G.elements()]
    return G, H, np.array(image, dtype=np.int64)



@dataclass(frozen=True)
class SemidirectReport:
    """Lattice facts for ``M1 = {(x,0,z)}``, ``M2 = {(0,y,z)}`` and the complements
    ``E' = {(x,0,0)}``, ``F' = {(0,y,0)}``, all checked on the Cayley table."""

    maximal_abelian: bool
    meet_is_center: bool
    normal: bool
    factorizations: bool

    @property
    def holds(self):
        return self.maximal_abelian and self.meet_is_center and self.normal and self.factorizations


def semidirect_factorization(G):
    """Check ``G = M1 x| F' = M2 x| E'`` pointwise on the table."""
    T = G.cayley_table()
    n = G.order
    idx = np.arange(n)
    rest, iz = np.divmod(idx, G.A.order)
    ix, iy = np.divmod(rest, G.F.order)
    M1, M2 = set(idx[iy == 0].tolist()), set(idx[ix == 0].tolist())
    Ep, Fp = set(idx[(iy == 0) & (iz == 0)].tolist()), set(idx[(ix == 0) & (iz == 0)].tolist())
    Z = set(idx[(ix == 0) & (iy == 0)].tolist())
    commutes = T == T.T

    def maximal_abelian(M):
        m = sorted(M)
        abelian = commutes[np.ix_(m, m)].all()
        centralizer = set(np.flatnonzero(commutes[:, m].all(axis=1)).tolist())
        return bool(abelian) and centralizer == M

    inv = np.argmax(T == 0, axis=1)

    def normal(M):
        m = np.array(sorted(M))
        conj = T[T[inv[:, None], m[None, :]], idx[:, None]]
        return set(conj.ravel().tolist()) <= M

    def factor(M, C):
        prods = {int(T[a, b]) for a in M for b in C}
        return len(prods) == n and len(M) * len(C) == n and M & C == {0}

    return SemidirectReport(
        maximal_abelian=maximal_abelian(M1) and maximal_abelian(M2),
        meet_is_center=M1 & M2 == Z,
        normal=normal(M1) and normal(M2),
        factorizations=factor(M1, Fp) and factor(M2, Ep))
