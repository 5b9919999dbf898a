"""Arbitrary finite groups given by Cayley tables.

This module never uses the Heisenberg formulas: center, derived subgroup
and commutator data are computed by direct scans, so it doubles as the
independent oracle for :mod:`heiskit.heisenberg`.

Commutators follow ``[x, y] = x^-1 y^-1 x y``.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _search
from .abelian import FiniteAbelianGroup, SubgroupView, find_complement
from .bilinear import BilinearForm
from .config import MAX_TABLE_ORDER, check_bound
from .errors import ConsistencyError, InputError, NotClassTwo
from .heisenberg import HeisenbergGroup


class TableGroup:
    """A finite group on ``0..n-1`` with a fully validated multiplication table."""

    def __init__(self, table):
        T = np.array(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise InputError("Cayley table must be a non-empty square array")
        n = T.shape[0]
        if n > MAX_TABLE_ORDER:
            raise InputError(f"table of order {n} is above the limit {MAX_TABLE_ORDER}")
        check_bound(n)
        if T.min() < 0 or T.max() >= n:
            raise InputError("table entries must be indices in [0, n)")
        full = np.arange(n)
        if not (np.sort(T, axis=1) == full).all() or not (np.sort(T, axis=0) == full[:, None]).all():
            raise InputError("table is not a Latin square")
        ids = [e for e in range(n) if (T[e] == full).all() and (T[:, e] == full).all()]
        if not ids:
            raise InputError("table has no two-sided identity")
        for a in range(n):
            if not np.array_equal(T[T[a]], T[a][T]):
                raise InputError(f"operation is not associative (first failure at row {a})")
        self.n = n
        self.table = T
        self.table.flags.writeable = False
        self.identity = ids[0]
        self.inverses = np.argmax(T == self.identity, axis=1)
        self._rows = T.tolist()
        self._inv = self.inverses.tolist()

    def __repr__(self):
        return f"TableGroup(order={self.n})"

    def __len__(self):
        return self.n

    @property
    def order(self):
        return self.n

    def mul(self, a, b):
        return self._rows[a][b]

    def inv(self, a):
        return self._inv[a]

    def commutator(self, a, b):
        r, i = self._rows, self._inv
        return r[r[i[a]][i[b]]][r[a][b]]

    def commutator_table(self):
        T, inv = self.table, self.inverses
        return T[T[inv[:, None], inv[None, :]], T]

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def element_order(self, g):
        k, p = 1, g
        while p != self.identity:
            p = self._rows[p][g]
            k += 1
        return k

    def order_profile(self):
        profile = {}
        for g in range(self.n):
            k = self.element_order(g)
            profile[k] = profile.get(k, 0) + 1
        return dict(sorted(profile.items()))

    def closure(self, gens):
        return frozenset(_search.closure(gens, self.mul, self.identity))

    def subgroup(self, members):
        return TableSubgroup(self, members)

    @classmethod
    def from_heisenberg(cls, G):
        return cls(G.cayley_table())


@dataclass(frozen=True)
class TableSubgroup:
    parent: TableGroup = field(repr=False)
    members: frozenset

    def __post_init__(self):
        members = frozenset(int(m) for m in self.members)
        object.__setattr__(self, "members", members)
        G = self.parent
        if G.identity not in members:
            raise InputError("subgroup must contain the identity")
        for a in members:
            if G.inv(a) not in members or any(G.mul(a, b) not in members for b in members):
                raise InputError("member set is not closed under product and inverse")

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members

    def __le__(self, other):
        return self.members <= other.members

    def sorted(self):
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class GroupBasics:
    center: TableSubgroup
    derived: TableSubgroup
    is_class2: bool


def group_basics(G):
    """Center by scanning, derived subgroup by closing all commutators."""
    T = G.table
    center = frozenset(np.flatnonzero((T == T.T).all(axis=1)).tolist())
    derived = G.closure(sorted(set(np.unique(G.commutator_table()).tolist())))
    return GroupBasics(TableSubgroup(G, center), TableSubgroup(G, derived), derived <= center)


@dataclass(frozen=True)
class AbelianStructure:
    """Coordinates for an abelian subgroup: ``to_index[i]`` is the table index of
    the i-th element (lexicographic) of :attr:`group`."""

    group: FiniteAbelianGroup
    basis: tuple
    to_index: np.ndarray = field(repr=False)
    from_index: dict = field(repr=False)

    def element(self, g):
        return self.group.element_at(self.from_index[g])

    def index(self, x):
        return int(self.to_index[self.group.index(x)])


def abelian_structure(G, members=None):
    """Recognize an abelian subgroup (default: all of ``G``) as a product of cyclic groups.

    Repeatedly splits off a cyclic subgroup generated by a lexicographically
    least element of maximal order, searching exhaustively for a complement.
    The factor orders come out as invariant factors ``d_1 | d_2 | ...``.
    """
    members = sorted(range(G.n) if members is None else members)
    mul, e = G.mul, G.identity
    if any(mul(a, b) != mul(b, a) for a in members for b in members):
        raise InputError("abelian_structure needs an abelian subgroup")
    remaining = members
    basis = []
    while len(remaining) > 1:
        orders = {g: G.element_order(g) for g in remaining}
        m = max(orders.values())
        x = min(g for g in remaining if orders[g] == m)
        cyc = _search.closure([x], mul, e)
        comp = _search.find_complement(remaining, mul, e, cyc)
        if comp is None:
            raise ConsistencyError("cyclic subgroup of maximal order has no complement")
        basis.append((x, m))
        remaining = sorted(comp)
    basis.reverse()
    A = FiniteAbelianGroup(tuple(m for _, m in basis))
    gens = [x for x, _ in basis]
    to_index = np.empty(A.order, dtype=np.int64)
    for i, coords in enumerate(product(*(range(n) for n in A.orders))):
        g = e
        for x, c in zip(gens, coords):
            for _ in range(c):
                g = mul(g, x)
        to_index[i] = g
    if sorted(to_index.tolist()) != members:
        raise ConsistencyError("recognized basis does not reach every member bijectively")
    if A.order > 1 and not np.array_equal(to_index[A.addition_table()],
                                          G.table[to_index[:, None], to_index[None, :]]):
        raise ConsistencyError("recognized coordinates are not a homomorphism")
    from_index = {int(g): i for i, g in enumerate(to_index)}
    return AbelianStructure(A, tuple(gens), to_index, from_index)


@dataclass(frozen=True)
class FactorizedCommutator:
    """``B: K x K -> Z(G)``, ``(xZ, yZ) -> [x, y]`` for ``K = G / Z(G)``.

    ``coset_of[g]`` is the coset index of ``g``; cosets are numbered by
    their least member, ``reps[k]``.  ``B_table[k, l]`` holds a table index
    of ``G`` lying in the center.
    """

    group: TableGroup
    center: TableSubgroup
    K: TableGroup
    coset_of: np.ndarray = field(repr=False)
    reps: np.ndarray = field(repr=False)
    Z: AbelianStructure
    K_structure: AbelianStructure
    B_table: np.ndarray = field(repr=False)

    def form(self):
        """``B`` as a :class:`BilinearForm` on recognized coordinates of ``K`` and ``Z``."""
        KS, ZS = self.K_structure, self.Z
        return BilinearForm(KS.group, KS.group, ZS.group, [
            [ZS.element(int(self.B_table[a, b])) for b in KS.basis] for a in KS.basis])

    def project(self, members):
        return frozenset(int(self.coset_of[g]) for g in members)

    def preimage(self, coset_set):
        return frozenset(np.flatnonzero(np.isin(self.coset_of, list(coset_set))).tolist())


def factorized_commutator(G):
    basics = group_basics(G)
    if not basics.is_class2:
        raise NotClassTwo("group is not nilpotent of class 2")
    center = basics.center
    zs = sorted(center.members)
    coset_of = np.full(G.n, -1, dtype=np.int64)
    reps = []
    for g in range(G.n):
        if coset_of[g] < 0:
            coset_of[G.table[g, zs]] = len(reps)
            reps.append(g)
    reps = np.array(reps, dtype=np.int64)
    KT = coset_of[G.table[reps[:, None], reps[None, :]]]
    K = TableGroup(KT)
    comm = G.commutator_table()
    B = comm[reps[:, None], reps[None, :]]
    if not np.array_equal(comm, B[coset_of[:, None], coset_of[None, :]]):
        raise ConsistencyError("commutator is not constant on cosets of the center")
    zset = center.members
    if not set(np.unique(B).tolist()) <= zset:
        raise ConsistencyError("commutator values leave the center")
    T = G.table
    # bilinear in the first slot; the second follows from B(l, k) = B(k, l)^-1
    if not np.array_equal(B[KT], T[B[:, None, :], B[None, :, :]]):
        raise ConsistencyError("factorized commutator is not bilinear")
    if (np.diag(B) != G.identity).any():
        raise ConsistencyError("factorized commutator is not alternating")
    nontrivial = (B != G.identity).any(axis=1)
    if not nontrivial[np.arange(K.n) != K.identity].all():
        raise ConsistencyError("factorized commutator is not separated")
    Z = abelian_structure(G, zs)
    KS = abelian_structure(K)
    return FactorizedCommutator(G, center, K, coset_of, reps, Z, KS, B)


@dataclass(frozen=True)
class Correspondence:
    """Isotropic subgroups of ``K`` against abelian subgroups of ``G`` containing ``Z(G)``."""

    isotropic: list
    abelian: list
    maximal_isotropic: list
    maximal_abelian: list
    bijective: bool
    monotone: bool
    preserves_maximality: bool

    @property
    def holds(self):
        return self.bijective and self.monotone and self.preserves_maximality


def isotropic_subgroups(fc):
    """Every isotropic subgroup of ``K`` w.r.t. ``B``, as frozensets of coset indices."""
    K, B, e = fc.K, fc.B_table, fc.group.identity
    check_bound(K.n)
    Brows = B.tolist()

    def admissible(current, x):
        row = Brows[x]
        return row[x] == e and all(row[c] == e for c in current)

    return _search.subgroups_where(list(range(K.n)), K.mul, K.identity, admissible)


def abelian_subgroups_containing_center(G, center):
    """Every abelian subgroup of ``G`` containing ``center``, by commuting extension."""
    T = G.table
    commutes = (T == T.T).tolist()

    def admissible(current, x):
        row = commutes[x]
        return all(row[c] for c in current)

    return _search.subgroups_where(list(range(G.n)), G.mul, G.identity, admissible,
                                   start=center.members)


def isotropic_correspondence(G):
    """Enumerate both sides independently and check ``L -> pi^-1(L)``."""
    fc = factorized_commutator(G)
    iso = isotropic_subgroups(fc)
    ab = abelian_subgroups_containing_center(G, fc.center)
    images = [fc.preimage(L) for L in iso]
    bijective = len(set(images)) == len(iso) and set(images) == set(ab)
    monotone = all((L1 <= L2) == (P1 <= P2)
                   for L1, P1 in zip(iso, images) for L2, P2 in zip(iso, images))
    max_iso = _search.maximal_sets(iso)
    max_ab = _search.maximal_sets(ab)
    preserves = {fc.preimage(L) for L in max_iso} == set(max_ab)
    return Correspondence(
        isotropic=iso, abelian=[TableSubgroup(G, P) for P in ab],
        maximal_isotropic=max_iso,
        maximal_abelian=sorted((TableSubgroup(G, P) for P in max_ab), key=TableSubgroup.sorted),
        bijective=bijective, monotone=monotone, preserves_maximality=preserves)


def maximal_abelian_subgroups(G, fc=None):
    """Maximal abelian subgroups of a class-2 group (all of them contain the center).

    Found as preimages of maximal isotropic subgroups of ``K``; each is
    certified maximal by checking that nothing outside it commutes with it.
    """
    fc = fc or factorized_commutator(G)
    iso = isotropic_subgroups(fc)
    out = []
    T = G.table
    commutes = T == T.T
    for L in _search.maximal_sets(iso):
        P = fc.preimage(L)
        members = sorted(P)
        centralizer = np.flatnonzero(commutes[:, members].all(axis=1))
        if set(centralizer.tolist()) != P:
            raise ConsistencyError("preimage of a maximal isotropic subgroup is not maximal abelian")
        out.append(TableSubgroup(G, P))
    return sorted(out, key=TableSubgroup.sorted)


@dataclass(frozen=True)
class PairCheck:
    """Conditions of the recognition theorem for one ordered pair ``(M1, M2)``."""

    first: int
    second: int
    meets_in_center: bool
    generates: bool
    center_splits: bool | None

    @property
    def qualifies(self):
        return self.meets_in_center and self.generates

    @property
    def success(self):
        return self.qualifies and bool(self.center_splits)


@dataclass(frozen=True)
class Decomposition:
    """``G = H(E, F, Z(G), omega)`` witnessed by ``phi(x, y, z) = j(y) i(x) z``.

    ``phi[h]`` is the table index in ``G`` of the Heisenberg element with
    index ``h``.
    """

    M1: TableSubgroup
    M2: TableSubgroup
    E_part: TableSubgroup
    F_part: TableSubgroup
    E: AbelianStructure
    F: AbelianStructure
    A: AbelianStructure
    heisenberg: HeisenbergGroup
    phi: np.ndarray = field(repr=False)
    pair: PairCheck = None


def _split_center(G, M, zmembers):
    """A complement of ``Z(G)`` inside the abelian subgroup ``M``, as table indices, or ``None``."""
    S = abelian_structure(G, M.members)
    zero = S.group.zero()
    zview = SubgroupView(S.group, (zero,), tuple(S.element(z) for z in zmembers))
    comp = find_complement(S.group, zview)
    if comp is None:
        return None
    return frozenset(S.index(x) for x in comp)


def heisenberg_pair_search(G, stop_at_first=False):
    """Check every ordered pair of maximal abelian subgroups, lexicographically.

    Returns ``(checks, maximal, fc, splits)`` where ``splits`` caches the
    complement found in each maximal abelian subgroup.
    """
    fc = factorized_commutator(G)
    maximal = maximal_abelian_subgroups(G, fc)
    z = fc.center.members
    splits = {}
    checks = []
    for i, M1 in enumerate(maximal):
        for j, M2 in enumerate(maximal):
            meets = (M1.members & M2.members) == z
            generates = meets and len(M1) * len(M2) == G.n * len(z)
            split = None
            if meets and generates:
                for k in (i, j):
                    if k not in splits:
                        splits[k] = _split_center(G, maximal[k], z)
                split = splits[i] is not None and splits[j] is not None
            check = PairCheck(i, j, meets, generates, split)
            checks.append(check)
            if stop_at_first and check.success:
                return checks, maximal, fc, splits
    return checks, maximal, fc, splits


def recognize_heisenberg(G):
    """Decompose a class-2 table group as a generalized Heisenberg group, or ``None``.

    ``None`` is definite: every pair of maximal abelian subgroups was tried.
    """
    checks, maximal, fc, splits = heisenberg_pair_search(G, stop_at_first=True)
    if not checks or not checks[-1].success:
        return None
    pair = checks[-1]
    return _build_decomposition(G, fc, maximal[pair.first], maximal[pair.second],
                                splits[pair.first], splits[pair.second], pair)


def _build_decomposition(G, fc, M1, M2, e_part, f_part, pair):
    ES = abelian_structure(G, e_part)
    FS = abelian_structure(G, f_part)
    ZS = fc.Z
    omega = BilinearForm(ES.group, FS.group, ZS.group, [
        [ZS.element(G.commutator(a, b)) for b in FS.basis] for a in ES.basis])
    H = HeisenbergGroup(omega)
    n = H.order
    if n != G.n:
        raise ConsistencyError("recognized factors have the wrong total order")
    phi = np.empty(n, dtype=np.int64)
    mul = G.mul
    nF, nA = FS.group.order, ZS.group.order
    for ix in range(ES.group.order):
        i_x = int(ES.to_index[ix])
        for iy in range(nF):
            yx = mul(int(FS.to_index[iy]), i_x)
            base = (ix * nF + iy) * nA
            for iz in range(nA):
                phi[base + iz] = mul(yx, int(ZS.to_index[iz]))
    if len(set(phi.tolist())) != n:
        raise ConsistencyError("reconstruction map is not a bijection")
    if not np.array_equal(phi[H.cayley_table()], G.table[phi[:, None], phi[None, :]]):
        raise ConsistencyError("reconstruction map is not a homomorphism")
    return Decomposition(M1, M2, TableSubgroup(G, e_part), TableSubgroup(G, f_part),
                         ES, FS, ZS, H, phi, pair)


@dataclass(frozen=True)
class Cocycle:
    """``gamma(k, l) = s(k) s(l) s(kl)^-1`` for a normalized section ``s`` of ``G -> K``."""

    fc: FactorizedCommutator
    section: tuple
    gamma: np.ndarray = field(repr=False)


def least_section(fc):
    return tuple(int(r) for r in fc.reps)


def random_section(fc, rng):
    """A normalized section picking a random member of each non-trivial coset."""
    G = fc.group
    section = []
    for k in range(fc.K.n):
        if k == fc.K.identity:
            section.append(G.identity)
        else:
            members = np.flatnonzero(fc.coset_of == k)
            section.append(int(members[rng.integers(len(members))]))
    return tuple(section)


def cocycle_from_section(fc, section=None):
    """Tabulate the cocycle of ``section`` and check it is central and satisfies
    ``gamma(k,l) gamma(kl,m) = gamma(l,m) gamma(k,lm)``."""
    G, K = fc.group, fc.K
    section = least_section(fc) if section is None else tuple(int(s) for s in section)
    if len(section) != K.n:
        raise InputError(f"section must list one representative for each of {K.n} cosets")
    for k, s in enumerate(section):
        if not 0 <= s < G.n or fc.coset_of[s] != k:
            raise InputError(f"section value {s} does not lie in coset {k}")
    if section[K.identity] != G.identity:
        raise InputError("section is not normalized: the trivial coset must map to the identity")
    T, inv = G.table, G.inverses
    s = np.array(section, dtype=np.int64)
    KT = K.table
    gamma = T[T[s[:, None], s[None, :]], inv[s[KT]]]
    if not set(np.unique(gamma).tolist()) <= fc.center.members:
        raise ConsistencyError("cocycle values are not central")
    idx = np.arange(K.n)
    lhs = T[gamma[:, :, None], gamma[KT[:, :, None], idx[None, None, :]]]
    rhs = T[gamma[None, :, :], gamma[idx[:, None, None], KT[None, :, :]]]
    if not np.array_equal(lhs, rhs):
        raise ConsistencyError("2-cocycle identity fails")
    return Cocycle(fc, section, gamma)


def mumford_from_cocycle(cocycle):
    """Five-term expression
    ``-g(x,-x) - g(y,-y) + g(-x,-y) + g(x,y) + g(-x-y, x+y)``
    evaluated in the center, checked against the factorized commutator.
    """
    fc = cocycle.fc
    G, K = fc.group, fc.K
    T, inv = G.table, G.inverses
    g = cocycle.gamma
    neg = K.inverses
    idx = np.arange(K.n)
    x, y = idx[:, None], idx[None, :]
    xy = K.table[x, y]
    t1 = inv[g[idx, neg]][:, None]
    t2 = inv[g[idx, neg]][None, :]
    t3 = g[neg[x], neg[y]]
    t4 = g[x, y]
    t5 = g[neg[xy], xy]
    value = T[T[T[T[t1, t2], t3], t4], t5]
    if not np.array_equal(value, fc.B_table):
        raise ConsistencyError("cocycle expression disagrees with the factorized commutator")
    return value


def format_table(table):
    """Cayley-table text: ``n`` then ``n`` rows of space-separated 0-based indices."""
    T = table.table if isinstance(table, TableGroup) else np.asarray(table)
    lines = [str(len(T))]
    lines.extend(" ".join(str(int(v)) for v in row) for row in T)
    return "\n".join(lines) + "\n"


def parse_table(text):
    """Inverse of :func:`format_table`; the identity must be index 0."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise InputError("line 1: empty Cayley table file")
    first_line, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise InputError(f"line {first_line}: expected the order n, got {first!r}") from None
    if n < 1:
        raise InputError(f"line {first_line}: order must be positive")
    if n > MAX_TABLE_ORDER:
        raise InputError(f"line {first_line}: order {n} is above the limit {MAX_TABLE_ORDER}")
    rows = lines[1:]
    if len(rows) != n:
        raise InputError(f"expected {n} rows after the order line, found {len(rows)}")
    table = []
    for lineno, ln in rows:
        parts = ln.split()
        if len(parts) != n:
            raise InputError(f"line {lineno}: expected {n} entries, found {len(parts)}")
        try:
            table.append([int(p) for p in parts])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer entry") from None
    G = TableGroup(table)
    if G.identity != 0:
        raise InputError("identity must be index 0")
    return G


def isomorphic_via(G, H, phi):
    """Is the index map ``phi: H -> G`` a bijective homomorphism?"""
    phi = np.asarray(phi, dtype=np.int64)
    HT = H.table if isinstance(H, TableGroup) else H.cayley_table()
    return (len(set(phi.tolist())) == G.n == len(phi)
            and np.array_equal(phi[HT], G.table[phi[:, None], phi[None, :]]))

