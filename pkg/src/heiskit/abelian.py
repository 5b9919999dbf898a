"""Finite abelian groups presented as products of cyclic groups.

A group ``Z_{n_1} x ... x Z_{n_k}`` is stored by its order sequence; the
user's factor order is kept so that coordinates stay stable for forms and
matrices.  Isomorphism questions go through :func:`canonical_form`.

>>> G = FiniteAbelianGroup((2, 4))
>>> -G.element((1, 3))
GroupElement(Z2 x Z4, (1, 1))
>>> canonical_form(FiniteAbelianGroup((2, 3)))[0]
FiniteAbelianGroup((6,))
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm, prod

import numpy as np
from sympy import factorint

from . import _search
from .config import check_bound
from .errors import ConsistencyError, InputError, ParentMismatch


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z_{n_1} x ... x Z_{n_k}``; the empty sequence is the trivial group."""

    orders: tuple

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        for n in orders:
            if n < 2:
                raise InputError(f"cyclic factor orders must be >= 2, got {n}")
        object.__setattr__(self, "orders", orders)

    def __repr__(self):
        return f"FiniteAbelianGroup({self.orders!r})"

    def __str__(self):
        if not self.orders:
            return "1"
        return " x ".join(f"Z{n}" for n in self.orders)

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return prod(self.orders)

    @property
    def exponent(self):
        return lcm(*self.orders) if self.orders else 1

    def is_trivial(self):
        return not self.orders

    def element(self, coords):
        return GroupElement(self, coords)

    def zero(self):
        return GroupElement(self, (0,) * self.rank)

    def gens(self):
        """The standard generators ``u_i`` (one per cyclic factor)."""
        return [GroupElement(self, tuple(int(i == j) for j in range(self.rank)))
                for i in range(self.rank)]

    def elements(self):
        """All elements in lexicographic coordinate order."""
        check_bound(self.order)
        for coords in product(*(range(n) for n in self.orders)):
            yield GroupElement(self, coords, _reduced=True)

    def index(self, x):
        """Position of ``x`` in :meth:`elements` order."""
        i = 0
        for c, n in zip(x.coords, self.orders):
            i = i * n + c
        return i

    def element_at(self, i):
        coords = []
        for n in reversed(self.orders):
            i, c = divmod(i, n)
            coords.append(c)
        return GroupElement(self, tuple(reversed(coords)), _reduced=True)

    def coords_array(self):
        """``(order, rank)`` array of all coordinates, rows in lexicographic order."""
        check_bound(self.order)
        if not self.orders:
            return np.zeros((1, 0), dtype=np.int64)
        return np.indices(self.orders, dtype=np.int64).reshape(self.rank, -1).T.copy()

    def index_array(self, coords):
        """Vectorized :meth:`index` for an ``(m, rank)`` coordinate array."""
        coords = np.asarray(coords, dtype=np.int64)
        if not self.orders:
            return np.zeros(coords.shape[0], dtype=np.int64)
        return np.ravel_multi_index(tuple(coords.T), self.orders)

    def addition_table(self):
        c = self.coords_array()
        orders = np.array(self.orders, dtype=np.int64)
        summed = (c[:, None, :] + c[None, :, :]) % orders
        return self.index_array(summed.reshape(self.order ** 2, self.rank)).reshape(self.order, self.order)

    def __mul__(self, other):
        return FiniteAbelianGroup(self.orders + other.orders)


TRIVIAL = FiniteAbelianGroup(())


def cyclic(n):
    return FiniteAbelianGroup((n,)) if n > 1 else TRIVIAL


def direct_product(*groups):
    return reduce(lambda a, b: a * b, groups, TRIVIAL)


@dataclass(frozen=True)
class GroupElement:
    parent: FiniteAbelianGroup
    coords: tuple
    _reduced: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._reduced:
            coords = tuple(int(c) for c in self.coords)
            if len(coords) != self.parent.rank:
                raise InputError(
                    f"{len(coords)} coordinates given for a group of rank {self.parent.rank}")
            coords = tuple(c % n for c, n in zip(coords, self.parent.orders))
            object.__setattr__(self, "coords", coords)

    def __repr__(self):
        return f"GroupElement({self.parent}, {self.coords})"

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.parent != self.parent:
            raise ParentMismatch(f"elements of {self.parent} and {getattr(other, 'parent', other)}")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.parent, tuple(
            (a + b) % n for a, b, n in zip(self.coords, other.coords, self.parent.orders)), _reduced=True)

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.parent, tuple(
            (a - b) % n for a, b, n in zip(self.coords, other.coords, self.parent.orders)), _reduced=True)

    def __neg__(self):
        return GroupElement(self.parent, tuple(
            -a % n for a, n in zip(self.coords, self.parent.orders)), _reduced=True)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.parent, tuple(
            k * a % n for a, n in zip(self.coords, self.parent.orders)), _reduced=True)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def order(self):
        return lcm(*(n // gcd(c, n) for c, n in zip(self.coords, self.parent.orders))) if self.coords else 1


@dataclass(frozen=True, order=True)
class RationalResidue:
    """An element of Q/Z stored as ``num/den`` with ``0 <= num < den`` coprime."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den < 1:
            raise InputError("denominator must be positive")
        q = Fraction(self.num % self.den, self.den)
        object.__setattr__(self, "num", q.numerator)
        object.__setattr__(self, "den", q.denominator)

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        return cls(q.numerator, q.denominator)

    def __str__(self):
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    def __add__(self, other):
        return RationalResidue.from_fraction(self.as_fraction() + other.as_fraction())

    def __sub__(self, other):
        return RationalResidue.from_fraction(self.as_fraction() - other.as_fraction())

    def __neg__(self):
        return RationalResidue(-self.num, self.den)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return RationalResidue(k * self.num, self.den)

    __rmul__ = __mul__

    def as_fraction(self):
        return Fraction(self.num, self.den)

    def numerator_over(self, n):
        """Integer ``c`` in ``[0, n)`` with ``self == c/n``; ``den`` must divide ``n``."""
        if n % self.den:
            raise InputError(f"{self} is not a multiple of 1/{n}")
        return self.num * (n // self.den)

    def order(self):
        return self.den

    def is_zero(self):
        return self.num == 0


class Homomorphism:
    """A homomorphism given by an integer matrix ``t[j][i]`` = image of ``u_i`` in slot ``j``.

    Entries are reduced modulo the target orders and must satisfy
    ``e_i * t[j][i] == 0 (mod a_j)``.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        rows = tuple(tuple(int(v) for v in row) for row in matrix)
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise InputError(
                f"matrix shape must be {target.rank}x{source.rank} for {source} -> {target}")
        rows = tuple(tuple(v % a for v in row) for row, a in zip(rows, target.orders))
        for j, (row, a) in enumerate(zip(rows, target.orders)):
            for i, (v, e) in enumerate(zip(row, source.orders)):
                if e * v % a:
                    raise InputError(
                        f"entry ({j},{i}) = {v} incompatible: {e}*{v} != 0 mod {a}")
        self.source = source
        self.target = target
        self.matrix = rows

    @classmethod
    def from_images(cls, source, target, images):
        """Homomorphism sending the i-th standard generator of ``source`` to ``images[i]``."""
        images = list(images)
        if len(images) != source.rank:
            raise InputError("one image per generator required")
        for y in images:
            if y.parent != target:
                raise ParentMismatch("generator image not in target")
        return cls(source, target, [[y.coords[j] for y in images] for j in range(target.rank)])

    @classmethod
    def identity(cls, G):
        return cls(G, G, [[int(i == j) for i in range(G.rank)] for j in range(G.rank)])

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [[0] * source.rank for _ in range(target.rank)])

    def __repr__(self):
        return f"Homomorphism({self.source} -> {self.target}, {self.matrix})"

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __call__(self, x):
        if x.parent != self.source:
            raise ParentMismatch(f"{x} is not in {self.source}")
        return GroupElement(self.target, tuple(
            sum(t * c for t, c in zip(row, x.coords)) % a
            for row, a in zip(self.matrix, self.target.orders)), _reduced=True)

    def apply_array(self, coords):
        """Images of an ``(m, source.rank)`` coordinate array, as target coordinates."""
        coords = np.asarray(coords, dtype=np.int64)
        if not self.target.rank:
            return np.zeros((coords.shape[0], 0), dtype=np.int64)
        m = np.array(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        return (coords @ m.T) % np.array(self.target.orders, dtype=np.int64)

    def images(self):
        """Images of the standard generators of the source."""
        return [self(u) for u in self.source.gens()]

    def _check_same(self, other):
        if self.source != other.source or self.target != other.target:
            raise InputError("homomorphisms have different source or target")

    def __add__(self, other):
        self._check_same(other)
        return Homomorphism(self.source, self.target, [
            [a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return Homomorphism(self.source, self.target, [[-a for a in r] for r in self.matrix])

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other):
        """``self o other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise InputError(f"cannot compose {self.source}<-... with ...->{other.target}")
        return Homomorphism(other.source, self.target, [
            [sum(self.matrix[k][j] * other.matrix[j][i] for j in range(self.source.rank))
             for i in range(other.source.rank)]
            for k in range(self.target.rank)])

    __matmul__ = compose

    def kernel(self):
        coords = self.source.coords_array()
        zero = ~self.apply_array(coords).any(axis=1)
        elems = [GroupElement(self.source, tuple(int(v) for v in row), _reduced=True)
                 for row in coords[zero]]
        return SubgroupView(self.source, tuple(elems), tuple(elems))

    def image(self):
        return subgroup_closure(self.target, self.images())

    def is_injective(self):
        return len(self.kernel()) == 1

    def is_surjective(self):
        return len(self.image()) == self.target.order

    def is_bijective(self):
        return self.source.order == self.target.order and self.is_injective()

    def inverse(self):
        """Inverse of a bijective homomorphism, found by enumerating the source."""
        if not self.is_bijective():
            raise InputError("homomorphism is not bijective")
        coords = self.source.coords_array()
        table = dict(zip(map(tuple, self.apply_array(coords).tolist()), map(tuple, coords.tolist())))
        images = [GroupElement(self.source, table[v.coords]) for v in self.target.gens()]
        return Homomorphism.from_images(self.target, self.source, images)


def is_homomorphism_table(source, target, func):
    """Enumeration oracle: does ``func`` respect addition on every pair?"""
    elems = list(source.elements())
    images = {x: func(x) for x in elems}
    return all(images[x + y] == images[x] + images[y] for x in elems for y in elems)


@dataclass(frozen=True)
class SubgroupView:
    """A subgroup of ``parent`` together with generators and its explicit elements."""

    parent: FiniteAbelianGroup
    generators: tuple
    elements: tuple

    def __post_init__(self):
        elems = tuple(sorted(self.elements, key=lambda x: x.coords))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_members", frozenset(x.coords for x in elems))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x.parent == self.parent and x.coords in self._members

    def __eq__(self, other):
        return (isinstance(other, SubgroupView) and self.parent == other.parent
                and self._members == other._members)

    def __hash__(self):
        return hash((self.parent, self._members))

    @property
    def order(self):
        return len(self.elements)

    def coord_set(self):
        return self._members

    def is_trivial(self):
        return len(self.elements) == 1

    def intersection(self, other):
        common = [x for x in self.elements if x in other]
        return SubgroupView(self.parent, tuple(common), tuple(common))

    def __le__(self, other):
        return self._members <= other._members


def _add_coords(orders):
    def op(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))
    return op


def subgroup_closure(G, gens):
    """Smallest subgroup of ``G`` containing ``gens`` (breadth-first closure)."""
    check_bound(G.order)
    gens = tuple(gens)
    for g in gens:
        if g.parent != G:
            raise ParentMismatch(f"{g} is not in {G}")
    coords = _search.closure([g.coords for g in gens], _add_coords(G.orders), (0,) * G.rank)
    elems = tuple(GroupElement(G, c, _reduced=True) for c in coords)
    return SubgroupView(G, gens, elems)


def find_complement(M, Z):
    """A subgroup ``C`` with ``Z & C = 0`` and ``Z + C = M``, or ``None`` if none exists.

    The search is exhaustive and lexicographic, so ``None`` is a proof.
    """
    if Z.parent != M:
        raise ParentMismatch("Z is not a subgroup of M")
    check_bound(M.order)
    elements = [c for c in product(*(range(n) for n in M.orders))]
    found = _search.find_complement(elements, _add_coords(M.orders), (0,) * M.rank, Z.coord_set())
    if found is None:
        return None
    elems = tuple(GroupElement(M, c, _reduced=True) for c in found)
    return SubgroupView(M, _generators_of(M, found), elems)


def _generators_of(G, coord_set):
    """Greedy lexicographic generating set of an explicitly given subgroup."""
    gens, span = [], {(0,) * G.rank}
    op = _add_coords(G.orders)
    for c in sorted(coord_set):
        if c not in span:
            gens.append(GroupElement(G, c, _reduced=True))
            span = _search.extend(span, c, op)
    return tuple(gens)


def canonical_form(G):
    """Invariant-factor presentation ``d_1 | ... | d_r`` and an isomorphism onto it.

    Already-canonical inputs come back unchanged with the identity map.
    """
    orders = G.orders
    if all(b % a == 0 for a, b in zip(orders, orders[1:])):
        return G, Homomorphism.identity(G)
    # prime-power components: prime -> list of (p^k, source factor)
    components = {}
    for i, n in enumerate(orders):
        for p, k in factorint(n).items():
            components.setdefault(p, []).append((p ** k, i))
    r = max(len(v) for v in components.values())
    slots = [1] * r
    assigned = []
    for p, comps in components.items():
        comps.sort(key=lambda c: c[0])
        for offset, (q, i) in enumerate(comps):
            slot = r - len(comps) + offset
            slots[slot] *= q
            assigned.append((slot, q, i))
    C = FiniteAbelianGroup(tuple(slots))
    matrix = [[0] * G.rank for _ in range(r)]
    for slot, q, i in assigned:
        matrix[slot][i] += slots[slot] // q
    iso = Homomorphism(G, C, matrix)
    if not (C.order == G.order and iso.is_injective()):
        raise ConsistencyError(f"canonical form map for {G} is not bijective")
    return C, iso


def invariant_factors(G):
    return canonical_form(G)[0].orders


def is_isomorphic(G, H):
    return invariant_factors(G) == invariant_factors(H)


class HomGroup:
    """``Hom(E, A)`` presented as ``prod_{i,j} Z_{gcd(e_i, a_j)}``.

    Coordinate ``c_ij`` stands for the homomorphism with entry
    ``t[j][i] = c_ij * a_j / gcd(e_i, a_j)``; pairs with gcd 1 carry no
    coordinate.  Slots are ordered by source factor, then target factor.
    """

    def __init__(self, source, target):
        self.source = source
        self.target = target
        self.slots = tuple(
            (i, j, g)
            for i, e in enumerate(source.orders)
            for j, a in enumerate(target.orders)
            if (g := gcd(e, a)) > 1)
        self.group = FiniteAbelianGroup(tuple(g for _, _, g in self.slots))

    def __repr__(self):
        return f"HomGroup({self.source} -> {self.target})"

    def hom(self, c):
        """The homomorphism indexed by ``c`` (an element of :attr:`group`)."""
        if c.parent != self.group:
            raise ParentMismatch(f"{c} is not in {self.group}")
        matrix = [[0] * self.source.rank for _ in range(self.target.rank)]
        for v, (i, j, g) in zip(c.coords, self.slots):
            matrix[j][i] = v * (self.target.orders[j] // g)
        return Homomorphism(self.source, self.target, matrix)

    def index(self, h):
        """Inverse of :meth:`hom`."""
        if h.source != self.source or h.target != self.target:
            raise InputError("homomorphism does not belong to this Hom-group")
        coords = []
        for i, j, g in self.slots:
            step = self.target.orders[j] // g
            coords.append(h.matrix[j][i] // step)
        return GroupElement(self.group, tuple(coords))

    def evaluate(self, c, x):
        return self.hom(c)(x)

    def entries_matrix(self):
        """Integer array ``T[k, j, i]``: entry ``t[j][i]`` of the k-th generator's homomorphism."""
        T = np.zeros((len(self.slots), self.target.rank, self.source.rank), dtype=np.int64)
        for k, (i, j, g) in enumerate(self.slots):
            T[k, j, i] = self.target.orders[j] // g
        return T


def hom_group(E, A):
    return HomGroup(E, A)


class DualGroup(HomGroup):
    """The character group ``Hom(E, Z_N)`` with ``N = exponent(E)``; characters read in Q/Z."""

    def __init__(self, source):
        self.modulus = source.exponent
        super().__init__(source, cyclic(self.modulus))

    def __repr__(self):
        return f"DualGroup({self.source})"

    def pair(self, f, x):
        """``f(x)`` as a :class:`RationalResidue`."""
        value = self.evaluate(f, x)
        return RationalResidue(value.coords[0] if value.coords else 0, self.modulus)

    def pair_int(self, f, x):
        """``f(x)`` as an integer numerator over :attr:`modulus`."""
        value = self.evaluate(f, x)
        return value.coords[0] if value.coords else 0


def dual_group(E):
    return DualGroup(E)
