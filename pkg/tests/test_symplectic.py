from math import gcd

import numpy as np
import pytest

from heiskit.abelian import FiniteAbelianGroup, RationalResidue, canonical_form, cyclic, subgroup_closure
from heiskit.bilinear import BilinearForm, multiplication_form
from heiskit.catalogue import (abelian_groups, admits_symplectic_form, alternating_forms,
                               group_presentations, symplectic_catalogue)
from heiskit.errors import InputError, NotSymplectic, ParentMismatch
from heiskit.heisenberg import is_mumford_group
from heiskit.symplectic import (SelfDuality, dualities_isomorphic, dualities_isomorphic_bruteforce,
                                is_symplectic, maximal_isotropic_extend, mumford_group_from_duality,
                                mumford_self_duality, standard_form, standard_self_duality,
                                symplectic_decompose, validate_duality_isomorphism,
                                verify_decomposition)


def G(*orders):
    return FiniteAbelianGroup(tuple(orders))


def _small_catalogue():
    return [w for w in symplectic_catalogue(max_A=4, limit=12) if w.E.order <= 16]


def test_standard_trivial():
    d = standard_self_duality(G())
    assert d.K.order == 1 and is_symplectic(d)


def test_standard_z2_tabulated():
    d = standard_self_duality(cyclic(2))
    assert d.K.orders == (2, 2)
    for u in d.K.elements():
        for v in d.K.elements():
            (x, f), (y, g) = u.coords, v.coords
            assert d.b(u, v) == RationalResidue(g * x - f * y, 2)


def test_standard_z3_value():
    d = standard_self_duality(cyclic(3))
    assert d.b(d.K.element((1, 0)), d.K.element((0, 1))) == RationalResidue(1, 3)


def test_standard_formula_general():
    for A in group_presentations(12):
        d = standard_self_duality(A)
        assert is_symplectic(d)
        r = A.rank
        n = d.K.order
        step = max(1, n // 20)
        for i in range(0, n, step):
            for j in range(0, n, step):
                u, v = d.K.element_at(i), d.K.element_at(j)
                x, f = u.coords[:r], u.coords[r:]
                y, g = v.coords[:r], v.coords[r:]
                expected = _pair(A, g, x) - _pair(A, f, y)
                assert d.b(u, v) == expected


def _pair(A, f, x):
    """Character with coordinates ``f`` (slot k of order a_k) evaluated at ``x``: sum f_k x_k / a_k."""
    total = RationalResidue(0, 1)
    for fk, xk, ak in zip(f, x, A.orders):
        total = total + RationalResidue(fk * xk, ak)
    return total


def test_from_form_rejects_non_bijective():
    K = G(2, 2)
    with pytest.raises(InputError):
        SelfDuality.from_form(BilinearForm.zero(K, K, cyclic(2)))


def test_b_parent_check():
    d = standard_self_duality(cyclic(2))
    with pytest.raises(ParentMismatch):
        d.b(cyclic(2).zero(), d.K.zero())


def test_is_symplectic_examples():
    assert not is_symplectic(SelfDuality.from_form(multiplication_form(3)))
    assert is_symplectic(standard_self_duality(G()))
    for w in symplectic_catalogue(max_A=6, limit=8):
        assert is_symplectic(SelfDuality.from_form(w))


def test_maximal_isotropic_examples():
    d = standard_self_duality(cyclic(2))
    A_part = subgroup_closure(d.K, [d.K.element((1, 0))])
    out = maximal_isotropic_extend(d, A_part)
    assert set(out.elements) == set(A_part.elements)
    out = maximal_isotropic_extend(d, subgroup_closure(d.K, []))
    assert len(out) == 2
    triv = standard_self_duality(G())
    assert len(maximal_isotropic_extend(triv, subgroup_closure(triv.K, []))) == 1


def test_maximal_isotropic_rejects():
    d = standard_self_duality(cyclic(2))
    with pytest.raises(InputError):
        maximal_isotropic_extend(d, subgroup_closure(d.K, [d.K.element((1, 0)), d.K.element((0, 1))]))
    with pytest.raises(ParentMismatch):
        maximal_isotropic_extend(d, subgroup_closure(cyclic(2), []))


def test_lagrangian_size_and_maximality():
    for A in group_presentations(12):
        d = standard_self_duality(A)
        L = maximal_isotropic_extend(d, subgroup_closure(d.K, []))
        assert len(L) == A.order
        members = set(L.elements)
        for z in d.K.elements():
            if z not in members:
                assert not all(d.b(z, h).is_zero() for h in members) or not d.b(z, z).is_zero()


def test_decompose_trivial():
    dec = symplectic_decompose(standard_self_duality(G()))
    assert dec.A.order == 1 and dec.pairs == ()


def test_decompose_z2z2():
    K = G(2, 2)
    w = BilinearForm(K, K, cyclic(2), [[0, 1], [1, 0]])
    dec = symplectic_decompose(w)
    assert dec.A.orders == (2,) and dec.verified and verify_decomposition(w, dec)


def test_decompose_z4z4_standard():
    dec = symplectic_decompose(standard_form(cyclic(4)))
    assert dec.A.orders == (4,) and len(dec.pairs) == 1


def test_decompose_rejects():
    with pytest.raises(NotSymplectic):
        symplectic_decompose(multiplication_form(3))
    K = G(2, 2)
    with pytest.raises(NotSymplectic):
        symplectic_decompose(BilinearForm.zero(K, K, cyclic(2)))


def test_decompose_catalogue_identity():
    for w in symplectic_catalogue(max_A=8, limit=16):
        dec = symplectic_decompose(w)
        assert verify_decomposition(w, dec)
        assert dec.A.order ** 2 == w.E.order
        C, _ = canonical_form(dec.A * dec.A)
        assert C == canonical_form(w.E)[0]


def test_decompose_pairs_are_hyperbolic():
    for w in _small_catalogue():
        d = SelfDuality.from_form(w)
        dec = symplectic_decompose(w)
        for x, y, m in dec.pairs:
            assert d.b(x, y) == RationalResidue(1, m)
            assert x.order() == m and y.order() == m
        for (x1, y1, _), (x2, y2, _) in zip(dec.pairs, dec.pairs[1:]):
            for a in (x1, y1):
                for b in (x2, y2):
                    assert d.b(a, b).is_zero()


def test_step_two_existence_exhaustive():
    """A point of maximal order m pairs to an element of order m under a separated alternating form."""
    checked = 0
    for w in symplectic_catalogue(max_A=8, limit=16):
        d = SelfDuality.from_form(w)
        K = d.K
        N = d.modulus
        T = d.value_table
        m = K.exponent
        for i in range(K.order):
            if K.element_at(i).order() == m:
                assert any(gcd(int(v), N) == N // m for v in T[i])
                checked += 1
    assert checked > 0


def test_character_order_equals_element_order():
    """Bijectivity of nabla makes b(x, .) a character of exact order ord(x), for every x."""
    for w in _small_catalogue():
        d = SelfDuality.from_form(w)
        for x in d.K.elements():
            assert max(d.b(x, y).order() for y in d.K.elements()) == x.order()


def test_dualities_isomorphic_self():
    d = standard_self_duality(G(2, 4))
    same, xi = dualities_isomorphic(d, d)
    assert same and validate_duality_isomorphism(d, d, xi)


def test_dualities_isomorphic_permuted_presentation():
    d1 = standard_self_duality(G(2, 4))
    d2 = standard_self_duality(G(4, 2))
    same, xi = dualities_isomorphic(d1, d2)
    assert same and validate_duality_isomorphism(d1, d2, xi)
    K = G(2, 2)
    swapped = SelfDuality.from_form(BilinearForm(K, K, cyclic(2), [[0, 1], [1, 0]]))
    same, xi = dualities_isomorphic(standard_self_duality(cyclic(2)), swapped)
    assert same and dualities_isomorphic_bruteforce(standard_self_duality(cyclic(2)), swapped)


def test_dualities_z4_vs_z2z2():
    d1, d2 = standard_self_duality(cyclic(4)), standard_self_duality(G(2, 2))
    assert d1.K.order == d2.K.order == 16
    assert dualities_isomorphic(d1, d2) == (False, None)
    assert dualities_isomorphic_bruteforce(d1, d2) is None


def test_dualities_rejects_non_symplectic():
    d = SelfDuality.from_form(multiplication_form(3))
    with pytest.raises(NotSymplectic):
        dualities_isomorphic(d, d)


def test_dualities_agree_with_bruteforce():
    ds = [SelfDuality.from_form(w) for w in _small_catalogue()]
    for d1 in ds[::2]:
        for d2 in ds[::3]:
            if d1.K.order != d2.K.order:
                continue
            same, _ = dualities_isomorphic(d1, d2)
            assert same == (dualities_isomorphic_bruteforce(d1, d2) is not None)


def test_admission_oracle():
    assert admits_symplectic_form(G(2, 2))
    assert not admits_symplectic_form(cyclic(4))
    assert not admits_symplectic_form(G(2, 4))
    assert admits_symplectic_form(G(2, 2, 2, 2))
    for K in (G(2, 2), G(3, 3), G(2, 2, 2, 2), G(4, 4)):
        assert any(True for _ in alternating_forms(K, limit=4))
    for A in abelian_groups(4):
        assert admits_symplectic_form(A * A)


def test_realization_z2():
    r = mumford_group_from_duality(standard_self_duality(cyclic(2)))
    assert r.group.order == 8 and r.mumford_matches and r.cocycle_matches
    assert r.degenerate is None and is_mumford_group(r.group).mumford


def test_realization_trivial_flagged():
    r = mumford_group_from_duality(standard_self_duality(G()))
    assert r.degenerate == "degenerate: abelian"


def test_realization_z2z4():
    d = standard_self_duality(G(2, 4))
    r = mumford_group_from_duality(d)
    # A = Z_exp = Z4, so the order is |K| * 4
    assert r.group.order == 64 * 4
    same, _ = dualities_isomorphic(mumford_self_duality(r.group), d)
    assert same


def test_realization_on_catalogue():
    for w in symplectic_catalogue(max_A=6, limit=4):
        d = SelfDuality.from_form(w)
        r = mumford_group_from_duality(d)
        assert r.mumford_matches and r.cocycle_matches
        same, _ = dualities_isomorphic(mumford_self_duality(r.group), d)
        assert same


def test_residue_form_lifts():
    d = standard_self_duality(cyclic(2))
    w4 = d.residue_form(4)
    T2, T4 = d.value_table, w4.table()
    assert np.array_equal(T2 * 2, T4)
    with pytest.raises(InputError):
        d.residue_form(3)
