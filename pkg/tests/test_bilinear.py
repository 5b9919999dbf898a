import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heiskit.abelian import FiniteAbelianGroup, Homomorphism, cyclic, hom_group
from heiskit.bilinear import (BilinearForm, brute_force_alternating, brute_force_bilinear,
                              brute_force_separated, classify_form, curry, evaluation_form,
                              forms_isomorphic, is_alternating, is_separated, multiplication_form,
                              validate_form_isomorphism)
from heiskit.catalogue import alternating_forms, form_catalogue, random_form
from heiskit.errors import InputError, ParentMismatch
from heiskit.symplectic import standard_form


def G(*orders):
    return FiniteAbelianGroup(tuple(orders))


def test_evaluate_examples():
    w = multiplication_form(4)
    Z4 = w.E
    for y in Z4.elements():
        assert w(Z4.zero(), y).is_zero()
    assert w(Z4.element((2,)), Z4.element((3,))).coords == (2,)
    with pytest.raises(ParentMismatch):
        w(cyclic(2).element((1,)), Z4.element((1,)))


def test_evaluation_form_is_evaluation():
    E, A = G(2, 4), cyclic(4)
    w = evaluation_form(E, A)
    H = hom_group(E, A)
    for x in E.elements():
        for c in H.group.elements():
            assert w(x, c) == H.hom(c)(x)


def test_entry_compatibility():
    with pytest.raises(InputError, match=r"\(0,0\)"):
        BilinearForm(cyclic(2), cyclic(2), cyclic(4), [[1]])
    BilinearForm(cyclic(2), cyclic(2), cyclic(4), [[2]])
    with pytest.raises(InputError):
        BilinearForm(cyclic(2), cyclic(2), cyclic(2), [[1, 0]])


def test_classify_examples():
    E = G(2, 3)
    zero = BilinearForm.zero(E, E, cyclic(6))
    assert not classify_form(zero).separated
    mult = multiplication_form(2)
    c = classify_form(mult)
    assert (c.separated, c.symmetric, c.alternating) == (True, True, False)
    for orders in [(2,), (3,), (4,), (2, 2), (2, 4), (8,)]:
        std = standard_form(G(*orders))
        c = classify_form(std)
        assert c.separated and c.alternating
        assert brute_force_alternating(std) and brute_force_separated(std)


def test_classify_flags_need_square():
    w = BilinearForm(cyclic(2), G(2, 2), cyclic(2), [[1, 0]])
    assert classify_form(w).alternating is None
    with pytest.raises(InputError):
        classify_form(w, flags=True)


def test_curry_examples():
    E = G(2, 4)
    w = evaluation_form(E, cyclic(4))
    right = curry(w, "right")
    assert right.is_bijective()
    assert right.source == hom_group(E, cyclic(4)).group
    # the right curry of the evaluation form is the identity in Hom-group coordinates
    assert right.target.orders == right.source.orders
    assert all(right(c).coords == c.coords for c in right.source.elements())
    m4 = curry(multiplication_form(4), "left")
    assert m4.is_injective()
    assert curry(BilinearForm.zero(E, E, cyclic(4)), "left").kernel().order == E.order


def test_curry_agrees_with_evaluation():
    rng = np.random.default_rng(3)
    for _ in range(20):
        E, F, A = G(2, 4), G(4, 2), G(2, 4)
        w = random_form(E, F, A, rng)
        left = curry(w, "left")
        HF = hom_group(F, A)
        right = curry(w, "right")
        HE = hom_group(E, A)
        for x in E.elements():
            for y in F.elements():
                assert HF.evaluate(left(x), y) == w(x, y)
                assert HE.evaluate(right(y), x) == w(x, y)


def test_separated_iff_kernels_trivial():
    for w in form_catalogue(60):
        assert is_separated(w) and brute_force_separated(w)
    rng = np.random.default_rng(5)
    for _ in range(60):
        E, F, A = G(2, 2), G(4,), G(2,)
        w = random_form(E, F, A, rng)
        assert is_separated(w) == brute_force_separated(w)
        assert is_separated(w) == (len(curry(w, "left").kernel()) == 1
                                   and len(curry(w, "right").kernel()) == 1)


@pytest.mark.parametrize("orders", [(2, 2), (4,), (2, 4), (3, 3)])
def test_bilinearity_exhaustive(orders):
    rng = np.random.default_rng(len(orders))
    E = G(*orders)
    for _ in range(5):
        w = random_form(E, E, G(2, 4) if 3 not in orders else cyclic(3), rng)
        assert brute_force_bilinear(w)


orders_st = st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3).filter(
    lambda o: np.prod(o) <= 64)


@settings(max_examples=80, deadline=None)
@given(orders_st, st.integers(0, 2 ** 32 - 1))
def test_alternating_criterion_matches_definition(orders, seed):
    K = G(*orders)
    rng = np.random.default_rng(seed)
    w = random_form(K, K, cyclic(K.exponent), rng)
    assert is_alternating(w) == brute_force_alternating(w)
    for a in alternating_forms(K, limit=3, seed=seed):
        assert is_alternating(a) and brute_force_alternating(a)


def test_antisymmetric_is_not_alternating_on_2_torsion():
    Z2 = cyclic(2)
    w = BilinearForm(Z2, Z2, Z2, [[1]])
    assert not is_alternating(w)
    # antisymmetric: w(x,y) = -w(y,x) holds trivially in Z2
    assert all(w(x, y) == -w(y, x) for x in Z2.elements() for y in Z2.elements())


def test_forms_isomorphic_identity():
    w = standard_form(G(2, 4))
    xi = forms_isomorphic(w, w)
    assert xi is not None and validate_form_isomorphism(w, w, xi)


def test_forms_isomorphic_z2z2_to_standard():
    K = G(2, 2)
    w = BilinearForm(K, K, cyclic(2), [[0, 1], [1, 0]])
    std = standard_form(cyclic(2))
    xi = forms_isomorphic(w, std)
    assert xi is not None and validate_form_isomorphism(w, std, xi)


def test_forms_isomorphic_alternating_vs_symmetric():
    Z3 = cyclic(3)
    K = G(3, 3)
    alt = BilinearForm(K, K, Z3, [[0, 1], [2, 0]])
    sym = BilinearForm(K, K, Z3, [[0, 1], [1, 0]])
    assert forms_isomorphic(alt, sym) is None
    assert forms_isomorphic(sym, alt) is None


def test_forms_isomorphic_order_mismatch():
    assert forms_isomorphic(standard_form(cyclic(2)), standard_form(G(2, 2))) is None
    with pytest.raises(InputError):
        forms_isomorphic(standard_form(cyclic(2)), standard_form(cyclic(3)))


def test_forms_isomorphic_reflexive_symmetric():
    K = G(2, 4)
    forms = alternating_forms(K, limit=16)
    for w in forms:
        for v in forms:
            xi = forms_isomorphic(w, v)
            back = forms_isomorphic(v, w)
            assert (xi is None) == (back is None)
            if xi is not None:
                assert validate_form_isomorphism(w, v, xi)


def test_transpose_and_pull_back():
    w = standard_form(cyclic(2))
    K = w.E
    t = w.transpose()
    for x in K.elements():
        for y in K.elements():
            assert t(y, x) == w(x, y)
    swap = Homomorphism(K, K, [[0, 1], [1, 0]])
    p = w.pull_back(swap, swap)
    for x in K.elements():
        for y in K.elements():
            assert p(x, y) == w(swap(x), swap(y)) == -w(x, y)
