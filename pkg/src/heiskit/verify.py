"""Acceptance checks A1 to A10, each an exact exhaustive computation."""

import time
from dataclasses import dataclass
from math import lcm

import numpy as np

from . import catalogue as cat
from .abelian import Homomorphism, RationalResidue, cyclic, dual_group, hom_group, is_homomorphism_table
from .bilinear import BilinearForm, brute_force_alternating, forms_isomorphic, is_alternating
from .grouptable import (cocycle_from_section, factorized_commutator, format_table,
                         group_basics, heisenberg_pair_search, isomorphic_via,
                         isotropic_correspondence, mumford_from_cocycle, parse_table,
                         random_section, recognize_heisenberg)
from .heisenberg import (HeisenbergGroup, center_and_derived, element_order_profile,
                         is_mumford_group, mackey_weil)
from .symplectic import (SelfDuality, dualities_isomorphic, mumford_group_from_duality,
                         mumford_self_duality, standard_form, standard_self_duality,
                         symplectic_decompose, verify_decomposition)

D4_PROFILE = {1: 1, 2: 5, 4: 2}


@dataclass(frozen=True)
class CriterionResult:
    name: str
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def in_time(self):
        return self.seconds < self.limit

    def line(self):
        status = "PASS" if self.passed and self.in_time else "FAIL"
        return f"{self.name} {status} {self.seconds:.2f}s/{self.limit:.0f}s {self.title}: {self.detail}"


def a1():
    G = cat.multiplication_heisenberg(2)
    cd = center_and_derived(G)
    profile = element_order_profile(G)
    q8 = cat.quaternion_table().order_profile()
    ok = G.order == 8 and len(cd.center) == 2 and cd.verified and profile == D4_PROFILE and q8 != profile
    return ok, f"order {G.order}, |Z| = {len(cd.center)}, profile {profile}"


def a2():
    Q8 = cat.quaternion_table()
    basics = group_basics(Q8)
    checks, maximal, _, _ = heisenberg_pair_search(Q8)
    qualifying = [c for c in checks if c.qualifies]
    ok = (basics.is_class2 and recognize_heisenberg(Q8) is None and qualifying
          and all(c.center_splits is False for c in qualifying))
    return ok, (f"class 2, {len(maximal)} maximal abelian, {len(qualifying)} pairs meeting in the "
                f"center and generating, none splits the center")


def a3(count=120):
    forms = cat.form_catalogue(count)
    bad = []
    for w in forms:
        cd = center_and_derived(HeisenbergGroup(w))
        if not cd.verified:
            bad.append(w)
    return len(forms) >= 100 and not bad, f"{len(forms)} separated forms, {len(bad)} mismatches"


def a4(count=120):
    forms = cat.form_catalogue(count)
    exceptions = 0
    mumford = 0
    for w in forms:
        r = is_mumford_group(HeisenbergGroup(w))
        mumford += r.mumford
        exceptions += r.mumford != (r.omega_E_bijective and r.omega_F_bijective)
    mw = cat.group_presentations(36)
    mw_bad = [E for E in mw if not is_mumford_group(mackey_weil(E)).mumford]
    non = is_mumford_group(cat.non_mumford_example()).mumford
    ok = exceptions == 0 and not mw_bad and not non
    return ok, (f"{len(forms)} forms ({mumford} Mumford), {exceptions} exceptions; "
                f"{len(mw)} Mackey-Weil groups, {len(mw_bad)} non-Mumford; (xy,0) Mumford: {non}")


def a5(max_order=128):
    groups = cat.heisenberg_catalogue(max_order)
    failures = 0
    for G in groups:
        T = parse_table(format_table(G.cayley_table()))
        dec = recognize_heisenberg(T)
        if dec is None or not isomorphic_via(T, dec.heisenberg, dec.phi):
            failures += 1
            continue
        # the imported table is the original one, so phi is an isomorphism onto G
        if not np.array_equal(T.table, G.cayley_table()):
            failures += 1
    return failures == 0 and bool(groups), f"{len(groups)} groups up to order {max_order}, {failures} failures"


def a6(sections=10, seed=7):
    rng = np.random.default_rng(seed)
    groups = [(n, G) for n, G in cat.class2_catalogue(64) if not G.is_abelian()]
    for name, G in groups:
        fc = factorized_commutator(G)
        base = mumford_from_cocycle(cocycle_from_section(fc))
        for _ in range(sections):
            value = mumford_from_cocycle(cocycle_from_section(fc, random_section(fc, rng)))
            if not np.array_equal(value, base):
                return False, f"section dependence in {name}"
    return len(groups) >= 5, f"{len(groups)} non-abelian class-2 groups x {sections + 1} sections"


def lifted(w, L):
    return SelfDuality.from_form(w).residue_form(L)


def decomposition_oracle(w):
    """Every invariant-factor ``A`` with ``A x dual(A)`` carrying a form isomorphic to ``w``."""
    K = w.E
    out = []
    for A in cat.abelian_groups(K.order):
        if A.order ** 2 != K.order:
            continue
        std = standard_form(A)
        L = lcm(K.exponent, A.exponent)
        if forms_isomorphic(lifted(std, L), lifted(w, L)) is not None:
            out.append(A)
    return out


REQUIRED_K = [(2, 2), (4, 4), (2, 2, 2, 2), (6, 6), (2, 4, 2, 4)]


def a7():
    forms = cat.symplectic_catalogue()
    shapes = {w.E.orders for w in forms}
    failures, oracle_runs = 0, 0
    for w in forms:
        dec = symplectic_decompose(w)
        if not verify_decomposition(w, dec) or dec.A.order ** 2 != w.E.order:
            failures += 1
        if w.E.order <= 16:
            oracle_runs += 1
            if decomposition_oracle(w) != [dec.A]:
                failures += 1
    missing = [k for k in REQUIRED_K if k not in shapes]
    return (not failures and not missing,
            f"{len(forms)} forms on {len(shapes)} presentations, {oracle_runs} oracle checks, "
            f"{failures} failures, missing {missing}")


def a8(max_order=12):
    groups = cat.group_presentations(max_order)
    failures = 0
    for A in groups:
        d = standard_self_duality(A)
        r = mumford_group_from_duality(d)
        same, _ = dualities_isomorphic(mumford_self_duality(r.group), d)
        if not (r.mumford_matches and r.cocycle_matches and same):
            failures += 1
    return failures == 0, f"{len(groups)} presentations with |A| <= {max_order}, {failures} failures"


def _all_homs(E, A):
    """Oracle: every generator-image choice that respects the generator orders."""
    cands = [[a for a in A.elements() if (a * e).is_zero()] for e in E.orders]
    out = []

    def rec(k, images):
        if k == E.rank:
            out.append(Homomorphism.from_images(E, A, images))
            return
        for a in cands[k]:
            rec(k + 1, images + [a])

    rec(0, [])
    return out


def a9(max_order=12, form_order=64, seed=11):
    groups = cat.group_presentations(max_order)
    hom_fail = 0
    for E in groups:
        for A in groups:
            H = hom_group(E, A)
            oracle = _all_homs(E, A)
            homs = [H.hom(c) for c in H.group.elements()]
            if set(homs) != set(oracle) or len(homs) != len(oracle):
                hom_fail += 1
                continue
            if any(H.index(h) != c for h, c in zip(homs, H.group.elements())):
                hom_fail += 1
            elif E.order * A.order <= 64 and not all(
                    is_homomorphism_table(E, A, h) for h in homs):
                hom_fail += 1
    dual_fail = 0
    for E in groups:
        D = dual_group(E)
        chars = list(D.group.elements())
        N = E.exponent
        if len(chars) != E.order:
            dual_fail += 1
            continue
        for x in E.elements():
            vals = [D.pair(f, x) for f in chars]
            brute = [RationalResidue(D.hom(f)(x).coords[0] if N > 1 else 0, N) for f in chars]
            if vals != brute:
                dual_fail += 1
            if not x.is_zero() and all(v.is_zero() for v in vals):
                dual_fail += 1
    rng = np.random.default_rng(seed)
    alt_fail, alt_count = 0, 0
    for K in cat.group_presentations(form_order):
        forms = cat.alternating_forms(K, limit=4, seed=int(rng.integers(2 ** 31)))
        for w in forms[:4]:
            alt_count += 1
            alt_fail += is_alternating(w) != brute_force_alternating(w)
        if K.rank:
            w = cat.random_form(K, K, cyclic(K.exponent), rng)
            alt_count += 1
            alt_fail += is_alternating(w) != brute_force_alternating(w)
            w = _antisymmetric_nonalternating(K)
            if w is not None:
                alt_count += 1
                alt_fail += is_alternating(w) != brute_force_alternating(w)
    ok = not (hom_fail or dual_fail or alt_fail)
    return ok, (f"hom_group {len(groups) ** 2} pairs ({hom_fail} bad), dual {len(groups)} groups "
                f"({dual_fail} bad), alternating {alt_count} forms ({alt_fail} bad)")


def _antisymmetric_nonalternating(K):
    """``x -> x_i y_i * (N/2)`` on a 2-torsion coordinate: antisymmetric but not alternating."""
    N = K.exponent
    if N % 2:
        return None
    for i, e in enumerate(K.orders):
        if e % 2 == 0:
            Z = cyclic(N)
            M = [[(0,)] * K.rank for _ in range(K.rank)]
            M[i][i] = (N // 2,)
            return BilinearForm(K, K, Z, M)
    return None


def a10(max_order=64):
    groups = cat.class2_catalogue(max_order)
    bad = [name for name, G in groups if not isotropic_correspondence(G).holds]
    return not bad and bool(groups), f"{len(groups)} class-2 groups, failures {bad}"


CRITERIA = {
    "A1": ("D4 identification", a1, 1.0),
    "A2": ("Q8 negative", a2, 1.0),
    "A3": ("center/derived formulas", a3, 60.0),
    "A4": ("Mumford predicate coherence", a4, 30.0),
    "A5": ("recognition round trip", a5, 120.0),
    "A6": ("cocycle identity", a6, 30.0),
    "A7": ("symplectic decomposition", a7, 120.0),
    "A8": ("duality round trip", a8, 60.0),
    "A9": ("oracle agreement", a9, 30.0),
    "A10": ("isotropic/abelian correspondence", a10, 60.0),
}


def run_criterion(name):
    title, func, limit = CRITERIA[name]
    start = time.perf_counter()
    passed, detail = func()
    return CriterionResult(name, title, bool(passed), detail, time.perf_counter() - start, limit)


def run_suite(names=None):
    return [run_criterion(n) for n in (names or CRITERIA)]

