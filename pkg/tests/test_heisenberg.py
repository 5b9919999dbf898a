import numpy as np
import pytest

import oracles
from heiskit.abelian import FiniteAbelianGroup, cyclic, hom_group
from heiskit.bilinear import BilinearForm, curry, is_alternating, is_separated
from heiskit.catalogue import (form_catalogue, group_presentations, heisenberg_catalogue,
                               multiplication_heisenberg, non_mumford_example)
from heiskit.config import bound
from heiskit.errors import NotSeparated, ParentMismatch
from heiskit.grouptable import TableGroup, isomorphic_via
from heiskit.heisenberg import (HeisenbergGroup, center_and_derived, element_order_profile,
                                embed_standard, is_mumford_group, is_reflexive,
                                isomorphism_to_dual_mackey_weil, mackey_weil, mumford_map,
                                semidirect_factorization, standard_heisenberg)


def G(*orders):
    return FiniteAbelianGroup(tuple(orders))


@pytest.fixture
def D4():
    return multiplication_heisenberg(2)


def test_multiply_examples(D4):
    g = D4.element((1,), (0,), (0,))
    h = D4.element((0,), (1,), (0,))
    assert g * D4.identity() == g
    assert (g * h).x.coords + (g * h).y.coords + (g * h).z.coords == (1, 1, 1)
    assert (h * g).x.coords + (h * g).y.coords + (h * g).z.coords == (1, 1, 0)


def test_multiply_matches_raw_law():
    w = form_catalogue(10)[9]
    H = HeisenbergGroup(w)
    E, F, A = w.E.orders, w.F.orders, w.A.orders
    omega = lambda x, y: w(w.E.element(x), w.F.element(y)).coords  # noqa: E731
    for g in list(H.elements())[:40]:
        for h in list(H.elements())[:40]:
            raw = oracles.heisenberg_product((g.x.coords, g.y.coords, g.z.coords),
                                             (h.x.coords, h.y.coords, h.z.coords), omega, E, F, A)
            p = g * h
            assert (p.x.coords, p.y.coords, p.z.coords) == raw


def test_inverse_examples(D4):
    assert D4.identity().inverse().is_identity()
    g = D4.element((1,), (1,), (0,))
    inv = g.inverse()
    assert (inv.x.coords, inv.y.coords, inv.z.coords) == ((1,), (1,), (1,))
    assert (g * inv).is_identity() and (inv * g).is_identity()
    H = multiplication_heisenberg(4)
    g = H.element((3,), (0,), (1,))
    inv = g.inverse()
    assert (inv.x.coords, inv.y.coords, inv.z.coords) == ((1,), (0,), (3,))


def test_commutator_examples(D4):
    g = D4.element((1,), (0,), (0,))
    h = D4.element((0,), (1,), (0,))
    assert D4.commutator(g, g).is_identity()
    c = D4.commutator(g, h)
    assert c.z.coords == (1,) and c.x.is_zero() and c.y.is_zero()
    four_fold = g.inverse() * h.inverse() * g * h
    assert four_fold == c
    g2 = D4.element((1,), (0,), (1,))
    assert D4.commutator(g2, h) == c


def test_commutator_formula_everywhere():
    for H in heisenberg_catalogue(64)[:15]:
        els = list(H.elements())
        for g in els[::3]:
            for h in els[::5]:
                assert H.commutator(g, h) == g.inverse() * h.inverse() * g * h


def test_parent_mismatch(D4):
    other = multiplication_heisenberg(3)
    with pytest.raises(ParentMismatch):
        D4.identity() * other.identity()


def test_constructor_rejects_non_separated():
    Z2 = cyclic(2)
    with pytest.raises(NotSeparated):
        HeisenbergGroup(BilinearForm(G(2, 2), Z2, Z2, [[1], [0]]))


def test_group_axioms_on_catalogue():
    for H in heisenberg_catalogue(512):
        T = H.cayley_table()
        TableGroup(T)  # validates Latin square, identity and associativity
        assert T[0].tolist() == list(range(H.order))


def test_class_two():
    for H in heisenberg_catalogue(128):
        T = H.cayley_table()
        n = len(T)
        inv = np.argmax(T == 0, axis=1)
        comm = T[T[inv[:, None], inv[None, :]], T]
        central = set(np.flatnonzero((T == T.T).all(axis=1)).tolist())
        assert set(np.unique(comm).tolist()) <= central
        assert n == H.order


def test_center_and_derived_examples(D4):
    cd = center_and_derived(D4)
    assert (len(cd.center), len(cd.derived), cd.verified) == (2, 2, True)
    for w in form_catalogue(30):
        H = HeisenbergGroup(w)
        cd = center_and_derived(H)
        assert len(cd.center) == w.A.order
        T = H.cayley_table().tolist()
        assert {H.A.index(z) for z in cd.center} == oracles.center(T)
        assert {H.A.index(z) for z in cd.derived} == oracles.derived(T)
        assert set(cd.derived.elements) <= set(cd.center.elements)


def test_derived_equals_center_when_values_generate():
    H = multiplication_heisenberg(4)
    cd = center_and_derived(H)
    assert cd.derived == cd.center
    N = non_mumford_example()
    cd = center_and_derived(N)
    assert len(cd.derived) == 2 and len(cd.center) == 4


def test_center_unverified_above_bound(D4):
    with bound(4):
        cd = center_and_derived(D4)
    assert not cd.verified and len(cd.center) == 2


def test_mumford_map_examples():
    H = mackey_weil(cyclic(2))
    M = mumford_map(H)
    assert M(H.K.zero()).is_zero()
    assert M.is_bijective()
    N = non_mumford_example()
    MN = mumford_map(N)
    assert MN.is_injective() and not MN.is_surjective()
    assert MN.target.order == 16 and N.K.order == 4


def test_mumford_map_formula():
    for H in heisenberg_catalogue(64)[:20]:
        M = mumford_map(H)
        Hom = hom_group(H.K, H.A)
        for k in H.K.elements():
            x, y = H.split_K(k)
            for k1 in H.K.elements():
                x1, y1 = H.split_K(k1)
                assert Hom.evaluate(M(k), k1) == H.omega(x, y1) - H.omega(x1, y)
        assert M.is_injective()
        B = H.commutator_form()
        assert is_alternating(B) and is_separated(B)


def test_is_mumford_examples():
    for E in group_presentations(8):
        assert is_mumford_group(mackey_weil(E)).mumford
    r = is_mumford_group(non_mumford_example())
    assert not r.mumford and not r.omega_E_bijective
    assert curry(non_mumford_example().omega, "left").target.order == 4
    r = is_mumford_group(multiplication_heisenberg(2))
    assert r.mumford and r.omega_E_bijective and r.omega_F_bijective


def test_mumford_pattern_on_catalogue():
    for w in form_catalogue(120):
        r = is_mumford_group(HeisenbergGroup(w))
        assert r.mumford == (r.omega_E_bijective and r.omega_F_bijective)


def test_standard_heisenberg_examples():
    assert standard_heisenberg(cyclic(2), cyclic(2)).order == 8
    with pytest.raises(NotSeparated):
        standard_heisenberg(cyclic(2), cyclic(3))
    mw = mackey_weil(G(2, 2))
    # A = Z_exp(E) = Z2, so |E| |dual E| |A| = 4 * 4 * 2
    assert mw.order == 32 and is_mumford_group(mw).mumford


def test_embed_standard_examples(D4):
    for side in "EF":
        emb = embed_standard(D4, side)
        assert emb.verified and emb.injective and emb.bijective
    N = non_mumford_example()
    emb = embed_standard(N, "E")
    assert emb.verified and emb.injective and not emb.bijective
    assert emb.target.order == 32
    S = standard_heisenberg(G(2, 4), cyclic(4))
    emb = embed_standard(S, "E")
    assert emb.bijective
    assert all(emb(g) == emb.target.element(g.x.coords, g.y.coords, g.z.coords)
               for g in S.elements())


def test_embeddings_on_catalogue():
    for H in heisenberg_catalogue(64):
        m = is_mumford_group(H).mumford
        embs = {side: embed_standard(H, side) for side in "EF"}
        for side, emb in embs.items():
            if emb.target.order <= 512:
                assert emb.verified
            assert emb.injective
            # one side alone: bijective exactly when the opposite curried map is
            assert emb.bijective == emb.curried.is_bijective()
            # a bijective side is Mumford exactly when its base is A-reflexive
            base = H.E if side == "E" else H.F
            if emb.bijective:
                assert m == is_reflexive(base, H.A)
        assert (embs["E"].bijective and embs["F"].bijective) == m


def test_single_embedding_bijective_without_mumford():
    V = G(2, 2)
    H = HeisenbergGroup(BilinearForm(V, cyclic(2), V, [[(1, 1)], [(0, 1)]]))
    emb = embed_standard(H, "F")
    assert emb.bijective and emb.verified
    assert not is_mumford_group(H).mumford
    assert not is_reflexive(cyclic(2), V)


def test_is_reflexive_examples():
    for E in group_presentations(36):
        assert is_reflexive(E, cyclic(E.exponent))
    assert not is_reflexive(cyclic(2), cyclic(3))
    for A in (cyclic(2), cyclic(5), G(2, 3)):
        assert is_reflexive(G(), A)


def test_semidirect_lattice_facts():
    for H in heisenberg_catalogue(128)[:25]:
        assert semidirect_factorization(H).holds


def test_mackey_weil_of_dual_is_isomorphic():
    for orders in [(2,), (3,), (4,), (2, 2), (2, 4), (6,)]:
        Gr, Hd, phi = isomorphism_to_dual_mackey_weil(G(*orders))
        assert len(set(phi.tolist())) == Gr.order == Hd.order
        assert isomorphic_via(TableGroup(Hd.cayley_table()), Gr, phi)


def test_element_order_profile_d4(D4):
    assert element_order_profile(D4) == {1: 1, 2: 5, 4: 2}
    T = D4.cayley_table().tolist()
    assert sorted(oracles.element_order(T, g) for g in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]
