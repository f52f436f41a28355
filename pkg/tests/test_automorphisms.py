import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from g2hopf.automorphisms import (
    EXTENDED_VARS,
    PRINTED_IDENTITIES,
    SWAP,
    EndoParams,
    apply_endo,
    check_hopf_compat,
    check_relations,
    compose,
    derive_exponent_constraints,
    gl_nonneg_permutation,
    invert,
    parse_form,
    reorder_forms,
    scan_relations_box,
    solve_weight_equations,
    lattice_condition,
    verify_commutation_lemmas,
)
from g2hopf.coefficients import LaurentPoly
from g2hopf.lattice import same_lattice
from g2hopf.pbw_algebra import AlgebraElement, X, basis_monomials, e1, e2, k_elem, multiply

lam1 = LaurentPoly.var("lambda1", names=EXTENDED_VARS)
gam1 = LaurentPoly.var("gamma1", names=EXTENDED_VARS)


def const(c):
    return LaurentPoly.const(c, EXTENDED_VARS)


def test_apply_endo_on_generators():
    assert apply_endo(EndoParams.identity(), X(3) + X(2) * k_elem(1, -1)) == X(3) + X(2) * k_elem(1, -1)
    p = EndoParams.formal(2, -1, 0, 0)
    assert apply_endo(p, e1()) == multiply(k_elem(2, -1), e1()).scale(gam1)
    assert apply_endo(p, k_elem(1, 0)) == k_elem(1, 0).scale(lam1)
    assert apply_endo(p, k_elem(-1, 0)) == k_elem(-1, 0).scale(lam1 ** -1)


def test_relations_examples():
    assert check_relations(EndoParams.formal(-3, 1, 3, 0)).passed
    rep = check_relations(EndoParams.formal(1, 0, 0, 0))
    failing = [e["relation"] for e in rep.entries if not e["passed"]]
    assert any(f.startswith("Serre (4,1)") for f in failing)
    assert all(f.startswith("Serre") for f in failing)
    assert "term_scalars" in [e for e in rep.entries if not e["passed"]][0]
    swap = check_relations(EndoParams.formal(sigma=SWAP))
    assert not all(e["passed"] for e in swap.entries if e["relation"].startswith(("k1 e", "k2 e")))


def test_relation_count():
    assert len(check_relations(EndoParams.identity()).entries) == 7


def test_weight_equations():
    for bound in range(1, 7):
        assert solve_weight_equations((1, 2), 1, bound) == [(0, 0, 0, 0, 0, 1)]
        assert solve_weight_equations((1, 2), 2, bound) == [(1, 0, 0, 0, 0, 0)]
        assert solve_weight_equations(SWAP, 1, bound) == []
        assert solve_weight_equations(SWAP, 2, bound) == []
    with pytest.raises(ValueError):
        solve_weight_equations((1, 2), 1, 7)


def test_constraint_lattice():
    lat = derive_exponent_constraints()
    assert len(lat.equations) == 12
    assert lat.rank == 2
    assert same_lattice(lat.generators, [[-3, 1, 3, 0], [-1, 0, 0, 1]])
    assert lat.contains((-3, 1, 3, 0)) and lat.contains((-1, 0, 0, 1))
    assert not lat.contains((1, 0, 0, 0))
    for v in itertools.product(range(-3, 4), repeat=4):
        assert lat.contains(v) == lattice_condition(*v)


def test_word_scalar_forms_frozen():
    # hand-derived reorderings of (k^A e1)^4 (k^C e2) and (k^C e2)^2 (k^A e1)
    A = (parse_form("a"), parse_form("b"))
    C = (parse_form("c"), parse_form("d"))
    R, S, K = reorder_forms([(A, 1)] * 4 + [(C, 2)])
    assert (str(R), str(S)) == ("6a+18b+4c+12d", "12a+18b+8c+12d")
    assert tuple(map(str, K)) == ("4a+c", "4b+d")
    R, S, _ = reorder_forms([(C, 2), (C, 2), (A, 1)])
    assert (str(R), str(S)) == ("-6a-12b-3c-6d", "-6a-6b-3c-3d")


def test_hopf_compat_examples():
    one = const(1)
    assert check_hopf_compat(EndoParams((1, 2), one, one, gam1, gam1)).passed
    rep = check_hopf_compat(EndoParams((1, 2), const(2), one, gam1, gam1))
    assert [e["passed"] for e in rep.entries][:2] == [False, True]
    rep = check_hopf_compat(EndoParams((1, 2), one, one, exp1=(-3, 1), exp2=(3, 0)))
    assert not rep.entries[2]["passed"]


def test_group_structure():
    p = EndoParams.formal(-3, 1, 3, 0)
    assert compose(p, EndoParams.identity()) == p
    inv = invert(p)
    assert inv.exponents == (3, -1, -3, 0)
    assert inv.gamma1 == gam1 ** -1 * lam1 ** -3 * LaurentPoly.var("lambda2", names=EXTENDED_VARS)
    with pytest.raises(ValueError):
        compose(EndoParams.formal(sigma=SWAP), p)
    with pytest.raises(ValueError):
        invert(EndoParams.formal(sigma=SWAP))


def test_inverse_undoes():
    p = EndoParams.formal(-1, 0, 0, 1)
    ident = compose(p, invert(p))
    for x in (e1(), e2(), k_elem(1, 0), k_elem(0, 1)):
        assert apply_endo(ident, x) == x


lattice_vec = st.tuples(st.integers(-2, 2), st.integers(-1, 1)).map(
    lambda t: (-3 * t[1] - t[0], t[1], 3 * t[1], t[0]))
units = st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(3, 5), Fraction(-7, 2)])


def numeric_params(v, scalars):
    return EndoParams((1, 2), *map(const, scalars), exp1=v[:2], exp2=v[2:])


@given(lattice_vec, lattice_vec, st.tuples(units, units, units, units))
def test_compose_matches_composition(u, v, scalars):
    p = EndoParams.formal(*u)
    q = numeric_params(v, scalars)
    pq = compose(p, q)
    assert lattice_condition(*pq.exponents)
    for x in (e1(), e2(), k_elem(1, 0), k_elem(0, -1)):
        assert apply_endo(pq, x) == apply_endo(p, apply_endo(q, x))


small = st.sampled_from(basis_monomials(2, (-1, 0, 1)))


@given(lattice_vec, small, small)
def test_endomorphism_is_multiplicative(v, a, b):
    p = EndoParams.formal(*v)
    x, y = AlgebraElement.monomial(a), AlgebraElement.monomial(b)
    assert apply_endo(p, multiply(x, y)) == multiply(apply_endo(p, x), apply_endo(p, y))


def test_gl_nonneg():
    assert gl_nonneg_permutation([[1, 0], [0, 1]]).permutation == (1, 2)
    swap = gl_nonneg_permutation([[0, 1], [1, 0]])
    assert swap.accepted and swap.cycle_text() == "(1 2)"
    rej = gl_nonneg_permutation([[1, 1], [0, 1]])
    assert not rej.accepted and "inverse" in rej.reason
    assert "unimodular" in gl_nonneg_permutation([[2, 0], [0, 1]]).reason


def test_scan_threads_deterministic():
    box = range(-1, 2)
    assert scan_relations_box(box, threads=1) == scan_relations_box(box, threads=4)


def test_commutation_audit_small_box():
    audit = verify_commutation_lemmas(range(-1, 2))
    assert audit.passed
    by_name = {e["identity"]: e for e in audit.entries}
    assert by_name["e2 e1^4"]["status"] == "uninterpretable"
    assert by_name["e1 e2^2"]["status"] == "uninterpretable"
    assert by_name["e1^4 e2"]["printed_matches"] < by_name["e1^4 e2"]["points"]
    assert by_name["k past X^beta"]["printed_r_matches"] == by_name["k past X^beta"]["points"]
    assert len(PRINTED_IDENTITIES) == 8


def test_first_identity_at_origin():
    audit = verify_commutation_lemmas([0])
    entry = [e for e in audit.entries if e["identity"] == "e1^4 e2"][0]
    assert entry["printed_matches"] == 1
