"""Free associative algebra on ``e1, e2`` and the Serre rewriting system.

Words are tuples over ``{1, 2}`` (1 for ``e1``, 2 for ``e2``).  The term order
is degree-lexicographic with ``e2 > e1``, which for tuples of 1s and 2s is just
``(len(w), w)``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coefficients import CORE_VARS, LaurentPoly, LocalizedPoly, r_s_monomial, scalar_inverse, scalar_to_json

Word = Tuple[int, ...]

E1, E2 = 1, 2
LETTER_NAMES = {1: "e1", 2: "e2"}


def word_weight(w: Word) -> Tuple[int, int]:
    return (w.count(1), w.count(2))


def deglex_key(w: Word):
    return (len(w), w)


def word_to_text(w: Word) -> str:
    if not w:
        return "1"
    return "*".join(LETTER_NAMES[x] for x in w)


def word_from_text(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for part in text.split("*"):
        part = part.strip()
        if part == "e1":
            out.append(1)
        elif part == "e2":
            out.append(2)
        else:
            raise ValueError(f"bad letter {part!r} in word {text!r}")
    return tuple(out)


class FreeElement:
    """Finite linear combination of words with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, LaurentPoly]] = None):
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, (LaurentPoly, LocalizedPoly)):
                c = LaurentPoly.const(c)
            if c:
                clean[tuple(w)] = c
        self.terms: Dict[Word, LaurentPoly] = clean

    @classmethod
    def word(cls, w: Sequence[int], coeff=1) -> "FreeElement":
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls) -> "FreeElement":
        return cls({(): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out[w] + c if w in out else c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return FreeElement._raw(out)

    def __neg__(self):
        return FreeElement._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        if not isinstance(c, (LaurentPoly, LocalizedPoly)):
            c = LaurentPoly.const(c)
        if not c:
            return FreeElement()
        return FreeElement._raw({w: v * c for w, v in self.terms.items() if v * c})

    def __mul__(self, other):
        if not isinstance(other, FreeElement):
            return self.scale(other)
        out: Dict[Word, LaurentPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = c1 * c2
                out[w] = out[w] + v if w in out else v
        return FreeElement({w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: deglex_key(kv[0]), reverse=True)

    def weights(self) -> set:
        return {word_weight(w) for w in self.terms}

    def leading_word(self) -> Word:
        return max(self.terms, key=deglex_key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"({c})*{word_to_text(w)}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [{"word": word_to_text(w), "coeff": scalar_to_json(c)} for w, c in self.sorted_terms()]



@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: FreeElement

    def __post_init__(self):
        for w in self.rhs.terms:
            if deglex_key(w) >= deglex_key(self.lhs):
                raise ValueError(f"rule {word_to_text(self.lhs)} -> ... is not order-decreasing at {word_to_text(w)}")


@dataclass
class RewriteSystem:
    rules: List[RewriteRule]
    step_budget: int = 2_000_000
    _nf_cache: Dict[Word, Dict[Word, LaurentPoly]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        lhss = [r.lhs for r in self.rules]
        if len(set(lhss)) != len(lhss):
            raise ValueError("rule left-hand sides must be pairwise distinct")

    @property
    def lhs_words(self) -> List[Word]:
        return [r.lhs for r in self.rules]

    def find_redex(self, w: Word):
        """Leftmost occurrence of any rule LHS in ``w`` as ``(position, rule)``."""
        best = None
        for rule in self.rules:
            k = len(rule.lhs)
            for i in range(len(w) - k + 1):
                if w[i:i + k] == rule.lhs:
                    if best is None or i < best[0]:
                        best = (i, rule)
                    break
        return best

    def is_irreducible(self, w: Word) -> bool:
        return self.find_redex(w) is None


def _serre_coefficients(names=CORE_VARS):
    r = LaurentPoly.var("r", names=names)
    s = LaurentPoly.var("s", names=names)
    one = LaurentPoly.const(1, names)
    mono = lambda a, b: r_s_monomial(a, b, names)  # noqa: E731
    deg3 = {
        (2, 2, 1): one,
        (2, 1, 2): -(mono(-3, 0) + mono(0, -3)),
        (1, 2, 2): mono(-3, -3),
    }
    # Degree-5 relation: sum_k (-1)^k binom(4,k)_{r/s} (r/s)^{k(k-1)/2} s^{3k} e1^{4-k} e2 e1^k.
    deg5 = {
        (1, 1, 1, 1, 2): one,
        (1, 1, 1, 2, 1): -((r + s) * (r * r + s * s)),
        (1, 1, 2, 1, 1): r * s * (r * r + s * s) * (r * r + r * s + s * s),
        (1, 2, 1, 1, 1): -(mono(3, 3) * (r + s) * (r * r + s * s)),
        (2, 1, 1, 1, 1): mono(6, 6),
    }
    return deg3, deg5


def printed_degree5_middle_coefficient(names=CORE_VARS) -> LaurentPoly:
    """The e1^2 e2 e1^2 coefficient exactly as typeset in the source, ``rs(r^2+rs+s^2)``."""
    r = LaurentPoly.var("r", names=names)
    s = LaurentPoly.var("s", names=names)
    return r * s * (r * r + r * s + s * s)


def serre_relations(names=CORE_VARS, printed_middle: bool = False) -> Tuple[FreeElement, FreeElement]:
    """The degree-(1,2) and degree-(4,1) Serre relations as free-algebra elements."""
    deg3, deg5 = _serre_coefficients(names)
    if printed_middle:
        deg5 = dict(deg5)
        deg5[(1, 1, 2, 1, 1)] = printed_degree5_middle_coefficient(names)
    return FreeElement(deg3), FreeElement(deg5)


def system_from_relations(relations: Iterable[FreeElement]) -> RewriteSystem:
    """Orient each relation for its deglex-largest word, with a unit leading coefficient."""
    rules = []
    for rel in relations:
        lead = rel.leading_word()
        inv = scalar_inverse(rel.terms[lead])
        rhs = FreeElement({w: -(v * inv) for w, v in rel.terms.items() if w != lead})
        rules.append(RewriteRule(lead, rhs))
    return RewriteSystem(rules)


def _apply_rule_at(w: Word, pos: int, rule: RewriteRule) -> FreeElement:
    pre, post = w[:pos], w[pos + len(rule.lhs):]
    return FreeElement._raw({pre + u + post: c for u, c in rule.rhs.terms.items()})


def _nf_word(w: Word, sys: RewriteSystem, budget: List[int]) -> Dict[Word, LaurentPoly]:
    cache = sys._nf_cache
    hit = cache.get(w)
    if hit is not None:
        return hit
    redex = sys.find_redex(w)
    if redex is None:
        result = {w: LaurentPoly.const(1)}
    else:
        budget[0] -= 1
        if budget[0] < 0:
            raise RuntimeError("rewriting step budget exhausted; system may not terminate")
        pos, rule = redex
        result: Dict[Word, LaurentPoly] = {}
        for u, c in _apply_rule_at(w, pos, rule).terms.items():
            for v, d in _nf_word(u, sys, budget).items():
                t = c * d
                if v in result:
                    t = result[v] + t
                if t:
                    result[v] = t
                else:
                    result.pop(v, None)
    cache[w] = result
    return result


def nf_reduce(x: FreeElement, sys: Optional[RewriteSystem] = None) -> FreeElement:
    """Irreducible normal form of ``x`` modulo the ideal generated by ``sys``."""
    if sys is None:
        sys = default_system()
    budget = [sys.step_budget]
    out: Dict[Word, LaurentPoly] = {}
    for w, c in x.terms.items():
        for v, d in _nf_word(w, sys, budget).items():
            t = c * d
            if v in out:
                t = out[v] + t
            if t:
                out[v] = t
            else:
                out.pop(v, None)
    return FreeElement._raw(out)


@dataclass
class CriticalPair:
    overlap: Word
    left: FreeElement
    right: FreeElement
    rules: Tuple[int, int]
    kind: str

    @property
    def resolved(self) -> bool:
        return self.left == self.right


def critical_pairs(sys: RewriteSystem, reduce: bool = True) -> List[CriticalPair]:
    """All overlap and inclusion ambiguities between rule left-hand sides.

    With ``reduce`` the two one-step rewrites are carried to normal form.
    """
    out = []
    rules = sys.rules
    for i, ri in enumerate(rules):
        for j, rj in enumerate(rules):
            a, b = ri.lhs, rj.lhs
            # overlap: proper suffix of a equals proper prefix of b
            for k in range(1, min(len(a), len(b))):
                if a[-k:] == b[:k]:
                    w = a + b[k:]
                    left = _apply_rule_at(w, 0, ri)
                    right = _apply_rule_at(w, len(a) - k, rj)
                    out.append(CriticalPair(w, left, right, (i, j), "overlap"))
            # inclusion: b strictly inside a
            if i != j and len(b) < len(a):
                for p in range(len(a) - len(b) + 1):
                    if a[p:p + len(b)] == b:
                        left = _apply_rule_at(a, 0, ri)
                        right = _apply_rule_at(a, p, rj)
                        out.append(CriticalPair(a, left, right, (i, j), "inclusion"))
    if reduce:
        for cp in out:
            cp.left = nf_reduce(cp.left, sys)
            cp.right = nf_reduce(cp.right, sys)
    return out


def all_words(n: int):
    return itertools.product((1, 2), repeat=n)


def irreducible_count(n: int, sys: Optional[RewriteSystem] = None) -> int:
    """Words of length ``n`` containing no rule LHS, by brute-force enumeration."""
    if sys is None:
        sys = default_system()
    lhss = sys.lhs_words
    return sum(1 for w in all_words(n) if not _contains_any(w, lhss))


def irreducible_words(weight: Tuple[int, int], sys: Optional[RewriteSystem] = None) -> List[Word]:
    """Irreducible words of a given (e1-count, e2-count), sorted deglex descending."""
    if sys is None:
        sys = default_system()
    p, q = weight
    lhss = sys.lhs_words
    out = []
    for pos in itertools.combinations(range(p + q), q):
        w = [1] * (p + q)
        for i in pos:
            w[i] = 2
        w = tuple(w)
        if not _contains_any(w, lhss):
            out.append(w)
    return sorted(out, reverse=True)


def _contains_any(w: Word, pats: Sequence[Word]) -> bool:
    for pat in pats:
        k = len(pat)
        for i in range(len(w) - k + 1):
            if w[i:i + k] == pat:
                return True
    return False


@dataclass
class ConfluenceReport:
    pairs: List[CriticalPair]
    dimension_table: Optional[List[Tuple[int, int, int]]] = None

    @property
    def pairs_resolved(self) -> bool:
        return all(cp.resolved for cp in self.pairs)

    @property
    def dimensions_match(self) -> bool:
        if self.dimension_table is None:
            return True
        return all(a == b for _, a, b in self.dimension_table)

    @property
    def confluent(self) -> bool:
        return self.pairs_resolved and self.dimensions_match

    def to_json(self):
        data = {
            "confluent": self.confluent,
            "critical_pairs": [
                {
                    "overlap": word_to_text(cp.overlap),
                    "kind": cp.kind,
                    "rules": list(cp.rules),
                    "resolved": cp.resolved,
                }
                for cp in self.pairs
            ],
        }
        if self.dimension_table is not None:
            data["dimensions"] = [
                {"degree": n, "irreducible_words": a, "pbw_monomials": b}
                for n, a, b in self.dimension_table
            ]
        return data


def confluence_check(sys: Optional[RewriteSystem] = None, max_degree: Optional[int] = None) -> ConfluenceReport:
    """Resolve every critical pair; optionally compare word counts with PBW dimensions."""
    if sys is None:
        sys = default_system()
    report = ConfluenceReport(critical_pairs(sys))
    if max_degree is not None:
        from .pbw_algebra import graded_dimension
        report.dimension_table = [
            (n, irreducible_count(n, sys), graded_dimension(n)) for n in range(max_degree + 1)
        ]
    return report


def complete(sys: RewriteSystem, max_degree: int = 8, max_rounds: int = 20) -> RewriteSystem:
    """Knuth-Bendix style completion: orient unresolved critical pairs as new rules.

    Only overlaps of length <= ``max_degree`` are examined.  Each round collects
    the nonzero differences, makes their leading words distinct by elimination
    and adds them all before recomputing critical pairs.
    """
    rules = list(sys.rules)
    for _ in range(max_rounds):
        current = RewriteSystem(rules)
        pending: List[FreeElement] = []
        for cp in critical_pairs(current, reduce=False):
            if len(cp.overlap) > max_degree:
                continue
            diff = nf_reduce(cp.left - cp.right, current)
            for lead_rule in pending:
                lead = lead_rule.leading_word()
                if lead in diff.terms:
                    diff = diff - lead_rule.scale(diff.terms[lead] * scalar_inverse(lead_rule.terms[lead]))
            if diff:
                pending.append(diff)
        if not pending:
            return current
        # back-substitute so later leads do not appear in earlier rules' leads
        for rel in pending:
            lead = rel.leading_word()
            inv = scalar_inverse(rel.terms[lead])
            rhs = FreeElement({w: -(v * inv) for w, v in rel.terms.items() if w != lead})
            rules.append(RewriteRule(lead, rhs))
    raise RuntimeError(f"completion did not stabilise within {max_rounds} rounds")


def serre_system(printed_middle: bool = False) -> RewriteSystem:
    """Just the two oriented Serre relations: ``e2 e2 e1 -> ...`` and ``e2 e1^4 -> ...``."""
    return system_from_relations(serre_relations(printed_middle=printed_middle))


@functools.lru_cache(maxsize=None)
def default_system() -> RewriteSystem:
    """The Serre rules completed to a confluent system (four extra rules, degrees 6 to 8)."""
    return complete(serre_system(), max_degree=8)
