import itertools

import pytest
from hypothesis import given, strategies as st

from g2hopf.coefficients import LaurentPoly, r_s_monomial
from g2hopf.free_algebra import (
    FreeElement,
    RewriteRule,
    RewriteSystem,
    complete,
    confluence_check,
    critical_pairs,
    default_system,
    irreducible_count,
    nf_reduce,
    printed_degree5_middle_coefficient,
    serre_relations,
    serre_system,
    word_weight,
)

r = LaurentPoly.var("r")
s = LaurentPoly.var("s")


def W(*letters):
    return FreeElement.word(letters)


# -- oracles ------------------------------------------------------------------------

def brute_irreducible(n, lhs):
    """Words of length n avoiding every lhs as a factor (independent enumeration)."""
    count = 0
    for w in itertools.product((1, 2), repeat=n):
        t = "".join(map(str, w))
        if not any("".join(map(str, l)) in t for l in lhs):
            count += 1
    return count


FROZEN_COMPLETED_COUNTS = [1, 2, 4, 7, 12, 19, 29, 42, 60]
FROZEN_RAW_COUNTS = [1, 2, 4, 7, 12, 19, 30, 46, 70]


def test_oracle_counts_frozen():
    assert [brute_irreducible(n, default_system().lhs_words) for n in range(9)] == FROZEN_COMPLETED_COUNTS
    assert [brute_irreducible(n, serre_system().lhs_words) for n in range(9)] == FROZEN_RAW_COUNTS


def test_kernel_counts_match_oracle():
    assert [irreducible_count(n) for n in range(9)] == FROZEN_COMPLETED_COUNTS
    assert [irreducible_count(n, serre_system()) for n in range(9)] == FROZEN_RAW_COUNTS


# -- rewriting --------------------------------------------------------------------------

def test_serre_system_shape():
    sys = serre_system()
    assert set(sys.lhs_words) == {(2, 2, 1), (2, 1, 1, 1, 1)}
    for rule in sys.rules:
        assert {word_weight(w) for w in rule.rhs.terms} == {word_weight(rule.lhs)}
    assert len(sys.rules[1].rhs.terms) == 4


def test_degree3_rule():
    expected = W(2, 1, 2).scale(r ** -3 + s ** -3) - W(1, 2, 2).scale(r_s_monomial(-3, -3))
    assert nf_reduce(W(2, 2, 1), serre_system()) == expected
    assert nf_reduce(W(1, 2)) == W(1, 2)


def test_serre_relations_reduce_to_zero():
    for rel in serre_relations():
        assert nf_reduce(rel).terms == {}


def test_printed_middle_coefficient_differs():
    printed = printed_degree5_middle_coefficient()
    assert printed.evaluate({"r": 1, "s": 1}) == 3
    corrected = r * s * (r * r + s * s) * (r * r + r * s + s * s)
    assert corrected.evaluate({"r": 1, "s": 1}) == 6


def test_rule_must_decrease():
    with pytest.raises(ValueError):
        RewriteRule((1, 2), W(2, 1))


def test_raw_system_has_unresolved_overlap():
    pairs = critical_pairs(serre_system())
    assert [cp.overlap for cp in pairs] == [(2, 2, 1, 1, 1, 1)]
    assert not pairs[0].resolved
    assert critical_pairs(RewriteSystem([serre_system().rules[0]])) == []
    assert critical_pairs(RewriteSystem([])) == []


def test_completed_system_confluent():
    rep = confluence_check(max_degree=8)
    assert rep.pairs_resolved and rep.dimensions_match
    assert len(default_system().rules) == 6


def test_empty_system_confluent():
    assert confluence_check(RewriteSystem([])).confluent


def test_engineered_counterexample():
    sys = RewriteSystem([RewriteRule((1, 2), FreeElement()), RewriteRule((2, 1), FreeElement.one())])
    assert not confluence_check(sys, max_degree=4).confluent


def test_completion_is_idempotent():
    again = complete(default_system(), max_degree=8)
    assert set(again.lhs_words) == set(default_system().lhs_words)


words = st.lists(st.sampled_from([1, 2]), min_size=0, max_size=7).map(tuple)


@given(words, words)
def test_normal_form_is_a_congruence(u, v):
    lhs = nf_reduce(W(*u) * W(*v))
    rhs = nf_reduce(nf_reduce(W(*u)) * nf_reduce(W(*v)))
    assert lhs == rhs


@given(words)
def test_normal_form_idempotent_and_irreducible(u):
    x = nf_reduce(W(*u))
    assert nf_reduce(x) == x
    assert all(default_system().is_irreducible(w) for w in x.terms)
