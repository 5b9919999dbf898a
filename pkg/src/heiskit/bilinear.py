"""Bilinear maps ``E x F -> A`` stored by their values on generator pairs."""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .abelian import DualGroup, GroupElement, Homomorphism, cyclic, hom_group
from .config import check_bound
from .errors import InputError, ParentMismatch


class BilinearForm:
    """``omega: E x F -> A`` with ``matrix[i][j] = omega(u_i, v_j)`` (coordinates in ``A``).

    ``omega(x, y) = sum_{i,j} x_i * y_j * matrix[i][j]``.  Every bilinear map
    arises from exactly one compatible matrix: the order of each entry must
    divide ``gcd(e_i, f_j)``.
    """

    __slots__ = ("E", "F", "A", "matrix", "_W")

    def __init__(self, E, F, A, matrix):
        rows = []
        for row in matrix:
            entries = []
            for v in row:
                if isinstance(v, GroupElement):
                    if v.parent != A:
                        raise ParentMismatch(f"form entry {v} is not in {A}")
                    v = v.coords
                elif isinstance(v, int):
                    v = (v,)
                entries.append(A.element(tuple(v)))
            rows.append(entries)
        if len(rows) != E.rank or any(len(r) != F.rank for r in rows):
            raise InputError(f"form matrix must be {E.rank}x{F.rank}")
        for i, (row, e) in enumerate(zip(rows, E.orders)):
            for j, (v, f) in enumerate(zip(row, F.orders)):
                g = gcd(e, f)
                if g % v.order():
                    raise InputError(
                        f"entry ({i},{j}) = {v.coords} has order {v.order()}, "
                        f"which does not divide gcd({e},{f}) = {g}")
        self.E, self.F, self.A = E, F, A
        self.matrix = tuple(tuple(v.coords for v in r) for r in rows)
        self._W = np.array(self.matrix, dtype=np.int64).reshape(E.rank, F.rank, A.rank)

    @classmethod
    def from_function(cls, E, F, A, func):
        """Form determined by ``func`` on generator pairs (func must be bilinear)."""
        return cls(E, F, A, [[func(u, v) for v in F.gens()] for u in E.gens()])

    @classmethod
    def zero(cls, E, F, A):
        return cls(E, F, A, [[A.zero()] * F.rank for _ in range(E.rank)])

    def __repr__(self):
        return f"BilinearForm({self.E} x {self.F} -> {self.A}, {self.matrix})"

    def __eq__(self, other):
        return (isinstance(other, BilinearForm) and (self.E, self.F, self.A, self.matrix)
                == (other.E, other.F, other.A, other.matrix))

    def __hash__(self):
        return hash((self.E, self.F, self.A, self.matrix))

    @property
    def is_square(self):
        return self.E == self.F

    def __call__(self, x, y):
        if x.parent != self.E or y.parent != self.F:
            raise ParentMismatch(f"arguments must lie in {self.E} and {self.F}")
        out = [0] * self.A.rank
        for xi, row in zip(x.coords, self.matrix):
            if xi:
                for yj, w in zip(y.coords, row):
                    if yj:
                        for k, wk in enumerate(w):
                            out[k] += xi * yj * wk
        return self.A.element(out)

    evaluate = __call__

    def values(self, X, Y):
        """Row-wise values for coordinate arrays ``X`` (m, rank E) and ``Y`` (m, rank F)."""
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        if not self.A.rank:
            return np.zeros((X.shape[0], 0), dtype=np.int64)
        out = np.einsum("ni,nj,ijk->nk", X, Y, self._W)
        return out % np.array(self.A.orders, dtype=np.int64)

    def table(self):
        """``|E| x |F|`` array of value indices in ``A`` (lexicographic element order)."""
        check_bound(self.E.order * self.F.order)
        X = self.E.coords_array()
        Y = self.F.coords_array()
        if not self.A.rank:
            return np.zeros((len(X), len(Y)), dtype=np.int64)
        vals = np.einsum("ai,bj,ijk->abk", X, Y, self._W) % np.array(self.A.orders, dtype=np.int64)
        return self.A.index_array(vals.reshape(-1, self.A.rank)).reshape(len(X), len(Y))

    def transpose(self):
        """The form ``(y, x) -> omega(x, y)`` on ``F x E``."""
        return BilinearForm(self.F, self.E, self.A,
                            [[self.matrix[i][j] for i in range(self.E.rank)]
                             for j in range(self.F.rank)])

    def pull_back(self, left, right):
        """``(x, y) -> omega(left(x), right(y))`` for homomorphisms into ``E`` and ``F``."""
        if left.target != self.E or right.target != self.F:
            raise InputError("pull-back maps must land in E and F")
        return BilinearForm.from_function(
            left.source, right.source, self.A, lambda u, v: self(left(u), right(v)))

    def push_forward(self, h):
        """Compose the values with a homomorphism ``h: A -> A'``."""
        if h.source != self.A:
            raise InputError("push-forward map must start at A")
        return BilinearForm(self.E, self.F, h.target,
                            [[h(self.A.element(v)) for v in row] for row in self.matrix])

    def image_generators(self):
        """Values on generator pairs; they generate the subgroup spanned by all values."""
        return [self.A.element(v) for row in self.matrix for v in row]


@dataclass(frozen=True)
class FormClass:
    separated: bool
    alternating: bool | None
    symmetric: bool | None


def is_alternating(w):
    """Generator criterion: zero diagonal and ``W[i][j] = -W[j][i]``."""
    if not w.is_square:
        raise InputError("alternating is only defined for forms on E x E")
    A = w.A
    n = w.E.rank
    for i in range(n):
        if any(w.matrix[i][i]):
            return False
        for j in range(i + 1, n):
            if (A.element(w.matrix[i][j]) + A.element(w.matrix[j][i])).coords != A.zero().coords:
                return False
    return True


def is_symmetric(w):
    if not w.is_square:
        raise InputError("symmetric is only defined for forms on E x E")
    n = w.E.rank
    return all(w.matrix[i][j] == w.matrix[j][i] for i in range(n) for j in range(i + 1, n))


def curry(w, side="left"):
    """``omega_E: E -> Hom(F, A)`` (left) or ``omega_F: F -> Hom(E, A)`` (right).

    The target is the presented group ``hom_group(F, A).group`` (resp.
    ``hom_group(E, A).group``); interpret images with that HomGroup.
    """
    if side == "left":
        src, other, rows_of = w.E, w.F, lambda i, j: w.matrix[i][j]
    elif side == "right":
        src, other, rows_of = w.F, w.E, lambda i, j: w.matrix[j][i]
    else:
        raise InputError(f"side must be 'left' or 'right', got {side!r}")
    H = hom_group(other, w.A)
    matrix = []
    for j, k, g in H.slots:
        step = w.A.orders[k] // g
        matrix.append([rows_of(i, j)[k] // step for i in range(src.rank)])
    return Homomorphism(src, H.group, matrix)


def is_separated(w):
    return curry(w, "left").is_injective() and curry(w, "right").is_injective()


def classify_form(w, flags=None):
    """Separatedness, and for square forms alternation and symmetry.

    ``flags=None`` reports the square-only flags when ``E == F``; asking
    for them explicitly on a non-square form is an error.
    """
    if flags and not w.is_square:
        raise InputError("alternating/symmetric flags need E == F")
    want = w.is_square if flags is None else flags
    return FormClass(
        separated=is_separated(w),
        alternating=is_alternating(w) if want else None,
        symmetric=is_symmetric(w) if want else None,
    )


def evaluation_form(E, A):
    """``E x Hom(E, A) -> A``, ``(x, g) -> g(x)``."""
    H = hom_group(E, A)
    return BilinearForm.from_function(E, H.group, A, lambda u, c: H.evaluate(c, u))


def dual_pairing(E):
    """``E x dual(E) -> Z_N``; values are numerators over ``N = exponent(E)``."""
    D = DualGroup(E)
    return BilinearForm.from_function(E, D.group, D.target, lambda u, c: D.evaluate(c, u))


def multiplication_form(n):
    """Ring multiplication on ``Z_n`` viewed as a form ``Z_n x Z_n -> Z_n``."""
    Z = cyclic(n)
    return BilinearForm(Z, Z, Z, [[1]] if n > 1 else [])


def forms_isomorphic(w, w1):
    """An isomorphism ``xi: E -> E1`` with ``w1(xi x, xi y) = w(x, y)``, or ``None``.

    Generator images are tried in lexicographic order, pruned by order,
    independence and the form values already fixed, so the first witness
    found is the lexicographically least one and ``None`` is definite.
    """
    if not (w.is_square and w1.is_square):
        raise InputError("form isomorphism is only defined for square forms")
    if w.A != w1.A:
        raise InputError("forms must take values in the same group")
    E, E1 = w.E, w1.E
    if E.order != E1.order:
        return None
    check_bound(E1.order)
    by_order = {}
    for c in E1.elements():
        by_order.setdefault(c.order(), []).append(c)
    zero = E1.zero().coords
    orders = E1.orders

    def add(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    @lru_cache(maxsize=None)
    def value(a, b):
        return w1(E1.element(a), E1.element(b)).coords

    images = []

    def rec(k, span):
        if k == E.rank:
            return list(images)
        for c in by_order.get(E.orders[k], ()):
            cc = c.coords
            if value(cc, cc) != w.matrix[k][k]:
                continue
            if any(value(images[l].coords, cc) != w.matrix[l][k]
                   or value(cc, images[l].coords) != w.matrix[k][l] for l in range(k)):
                continue
            if cc in span:
                continue
            grown = set(span)
            power = cc
            while power not in span:
                grown.update(add(s, power) for s in span)
                power = add(power, cc)
            if len(grown) != len(span) * E.orders[k]:
                continue
            images.append(c)
            found = rec(k + 1, grown)
            if found is not None:
                return found
            images.pop()
        return None

    found = rec(0, {zero})
    if found is None:
        return None
    return Homomorphism.from_images(E, E1, found)


def validate_form_isomorphism(w, w1, xi):
    """Pointwise check that ``xi`` is a bijection carrying ``w1`` back to ``w``."""
    if not xi.is_bijective():
        return False
    X = w.E.coords_array()
    n = len(X)
    check_bound(n * n)
    XX = np.repeat(X, n, axis=0)
    YY = np.tile(X, (n, 1))
    lhs = w1.values(xi.apply_array(XX), xi.apply_array(YY))
    rhs = w.values(XX, YY)
    return bool(np.array_equal(lhs, rhs))


def brute_force_alternating(w):
    """Oracle: ``omega(x, x) == 0`` for every ``x``."""
    X = w.E.coords_array()
    return not w.values(X, X).any()


def brute_force_bilinear(w):
    """Oracle: additivity in each slot on every triple."""
    E, F = w.E, w.F
    T = w.table()
    addE, addF, addA = E.addition_table(), F.addition_table(), w.A.addition_table()
    left = T[addE] == addA[T[:, None, :], T[None, :, :]]
    right = T[:, addF] == addA[T[:, :, None], T[:, None, :]]
    return bool(left.all() and right.all())


def brute_force_separated(w):
    T = w.table()
    nonzero_rows = (T != 0).any(axis=1)
    nonzero_cols = (T != 0).any(axis=0)
    return bool(nonzero_rows[1:].all() and nonzero_cols[1:].all())

