"""Coproduct, counit and antipode, plus bounded-degree axiom checks.

    Delta(e1) = e1 (x) 1 + k1^2 k2^-1 (x) e1      Delta(k_i) = k_i (x) k_i
    Delta(e2) = e2 (x) 1 + k1^-3 k2^2 (x) e2      eps(e_i) = 0, eps(k_i) = 1

The antipode on e-generators is the one forced by m(S (x) id)Delta = eps:
S(e1) = -k1^-2 k2 e1 and S(e2) = -k1^3 k2^-2 e2.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .coefficients import LaurentPoly, scalar_to_json
from .pbw_algebra import (
    NROOTS,
    ONE_MONO,
    AlgebraElement,
    PBWMonomial,
    basis_monomials,
    k_elem,
    monomial_sort_key,
    monomial_to_text,
    multiply,
    root_vector,
    weight,
)

# group-like factors attached to e1, e2 in the coproduct
E1_GROUPLIKE = (2, -1)
E2_GROUPLIKE = (-3, 2)

Pair = Tuple[PBWMonomial, PBWMonomial]


class TensorElement:
    """Element of the tensor square in the PBW (x) PBW basis."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Pair, object]] = None):
        clean: Dict[Pair, object] = {}
        for k, c in (terms or {}).items():
            if not isinstance(c, LaurentPoly) and not hasattr(c, "num"):
                c = LaurentPoly.const(c)
            if k in clean:
                c = clean[k] + c
            if c:
                clean[k] = c
            else:
                clean.pop(k, None)
        self.terms = clean

    @classmethod
    def pure(cls, a: AlgebraElement, b: AlgebraElement) -> "TensorElement":
        out = cls()
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                out = out + cls({(ma, mb): ca * cb})
        return out

    @classmethod
    def one(cls) -> "TensorElement":
        return cls({(ONE_MONO, ONE_MONO): 1})

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        t = TensorElement.__new__(TensorElement)
        t.terms = out
        return t

    def __neg__(self):
        t = TensorElement.__new__(TensorElement)
        t.terms = {k: -c for k, c in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        return TensorElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (monomial_sort_key(kv[0][0]), monomial_sort_key(kv[0][1])),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            coeff = "" if c == 1 else f"({c})*"
            parts.append(f"{coeff}{monomial_to_text(a)} (x) {monomial_to_text(b)}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [
            {"left": monomial_to_text(a), "right": monomial_to_text(b), "coeff": scalar_to_json(c)}
            for (a, b), c in self.sorted_terms()
        ]


def _mono_elem(m: PBWMonomial) -> AlgebraElement:
    return AlgebraElement._raw({m: LaurentPoly.const(1)})


def tensor_multiply(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """(a (x) b)(c (x) d) = ac (x) bd, each factor PBW-normalized."""
    out: Dict[Pair, object] = {}
    for (a, b), c1 in t1.terms.items():
        for (c, d), c2 in t2.terms.items():
            left = multiply(_mono_elem(a), _mono_elem(c))
            right = multiply(_mono_elem(b), _mono_elem(d))
            base = c1 * c2
            for ml, cl in left.terms.items():
                for mr, cr in right.terms.items():
                    key = (ml, mr)
                    v = base * cl * cr
                    v = out[key] + v if key in out else v
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    t = TensorElement.__new__(TensorElement)
    t.terms = out
    return t


def tensor_map(t: TensorElement, f: Callable[[AlgebraElement], AlgebraElement],
               g: Callable[[AlgebraElement], AlgebraElement]) -> TensorElement:
    """Apply linear maps ``f (x) g``."""
    out = TensorElement()
    for (a, b), c in t.terms.items():
        out = out + TensorElement.pure(f(_mono_elem(a)), g(_mono_elem(b))).scale(c)
    return out


def tensor_flip(t: TensorElement) -> TensorElement:
    return TensorElement({(b, a): c for (a, b), c in t.terms.items()})


# generator images ----------------------------------------------------------------------

def _e(letter: int) -> AlgebraElement:
    return _mono_elem(PBWMonomial((0, 0, 0, 0, 0, 1) if letter == 1 else (1, 0, 0, 0, 0, 0), (0, 0)))


def _grouplike(letter: int) -> Tuple[int, int]:
    return E1_GROUPLIKE if letter == 1 else E2_GROUPLIKE


def _delta_letter(letter: int) -> TensorElement:
    e = _e(letter)
    return TensorElement.pure(e, AlgebraElement.one()) + TensorElement.pure(k_elem(*_grouplike(letter)), e)


_DELTA_ROOT: Dict[int, TensorElement] = {}


def _delta_root(i: int) -> TensorElement:
    hit = _DELTA_ROOT.get(i)
    if hit is None:
        hit = TensorElement()
        letters = {1: _delta_letter(1), 2: _delta_letter(2)}
        for w, c in root_vector(i).terms.items():
            term = TensorElement.one()
            for x in w:
                term = tensor_multiply(term, letters[x])
            hit = hit + term.scale(c)
        _DELTA_ROOT[i] = hit
    return hit


_DELTA_MONO: Dict[PBWMonomial, TensorElement] = {}


def _delta_mono(m: PBWMonomial) -> TensorElement:
    hit = _DELTA_MONO.get(m)
    if hit is None:
        hit = TensorElement.one()
        for i, n in enumerate(m.x, start=1):
            for _ in range(n):
                hit = tensor_multiply(hit, _delta_root(i))
        if any(m.k):
            k = PBWMonomial((0,) * NROOTS, m.k)
            hit = tensor_multiply(hit, TensorElement({(k, k): 1}))
        _DELTA_MONO[m] = hit
    return hit


def coproduct(x: AlgebraElement) -> TensorElement:
    out = TensorElement()
    for m, c in x.terms.items():
        out = out + _delta_mono(m).scale(c)
    return out


def counit(x: AlgebraElement):
    """Sum of the coefficients of X-free monomials."""
    total = LaurentPoly.zero()
    for m, c in x.terms.items():
        if not any(m.x):
            total = total + c
    return total


# antipode ------------------------------------------------------------------------------

@dataclass
class Antipode:
    """Anti-homomorphism fixed by its values on e1, e2; S(k_i) = k_i^-1 always.

    ``printed=True`` uses the transcribed S(e1) = -k1^2 k2^-1 e1,
    S(e2) = -k1^-3 k2^2 e2, which does not satisfy the antipode axiom.
    """

    printed: bool = False
    _root_cache: Dict[int, AlgebraElement] = field(default_factory=dict, repr=False)
    _mono_cache: Dict[PBWMonomial, AlgebraElement] = field(default_factory=dict, repr=False)

    def letter(self, letter: int) -> AlgebraElement:
        g = _grouplike(letter)
        if not self.printed:
            g = (-g[0], -g[1])
        return -multiply(k_elem(*g), _e(letter))

    def root(self, i: int) -> AlgebraElement:
        hit = self._root_cache.get(i)
        if hit is None:
            letters = {1: self.letter(1), 2: self.letter(2)}
            hit = AlgebraElement()
            for w, c in root_vector(i).terms.items():
                term = AlgebraElement.one()
                for x in reversed(w):
                    term = multiply(term, letters[x])
                hit = hit + term.scale(c)
            self._root_cache[i] = hit
        return hit

    def mono(self, m: PBWMonomial) -> AlgebraElement:
        hit = self._mono_cache.get(m)
        if hit is None:
            hit = k_elem(-m.k[0], -m.k[1])
            for i in range(NROOTS, 0, -1):
                for _ in range(m.x[i - 1]):
                    hit = multiply(hit, self.root(i))
            self._mono_cache[m] = hit
        return hit

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement()
        for m, c in x.terms.items():
            out = out + self.mono(m).scale(c)
        return out


_AXIOM_ANTIPODE = Antipode()
_PRINTED_ANTIPODE = Antipode(printed=True)


def antipode(x: AlgebraElement, printed: bool = False) -> AlgebraElement:
    return (_PRINTED_ANTIPODE if printed else _AXIOM_ANTIPODE)(x)


def solve_antipode_generator(letter: int) -> AlgebraElement:
    """S(e) from S(g) e + S(e) = 0, where Delta(e) = e (x) 1 + g (x) e."""
    g = _grouplike(letter)
    return -multiply(k_elem(-g[0], -g[1]), _e(letter))


# axiom checks ----------------------------------------------------------------------------

def _mult_tensor(t: TensorElement, left=None, right=None) -> AlgebraElement:
    """m((left (x) right)(t)) with identity maps by default."""
    out = AlgebraElement()
    for (a, b), c in t.terms.items():
        x = _mono_elem(a) if left is None else left(_mono_elem(a))
        y = _mono_elem(b) if right is None else right(_mono_elem(b))
        out = out + multiply(x, y).scale(c)
    return out


def _triple(t: TensorElement, first: bool) -> Dict[Tuple[PBWMonomial, ...], object]:
    out: Dict[Tuple[PBWMonomial, ...], object] = {}
    for (a, b), c in t.terms.items():
        inner = _delta_mono(a if first else b)
        for (u, v), d in inner.terms.items():
            key = (u, v, b) if first else (a, u, v)
            val = c * d
            val = out[key] + val if key in out else val
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def coassociativity_holds(m: PBWMonomial) -> bool:
    d = _delta_mono(m)
    return _triple(d, True) == _triple(d, False)


def counit_holds(m: PBWMonomial) -> bool:
    x = _mono_elem(m)
    d = _delta_mono(m)
    left = AlgebraElement()
    right = AlgebraElement()
    for (a, b), c in d.terms.items():
        left = left + _mono_elem(b).scale(c * counit(_mono_elem(a)))
        right = right + _mono_elem(a).scale(c * counit(_mono_elem(b)))
    return left == x and right == x


def antipode_holds(m: PBWMonomial, printed: bool = False) -> Tuple[bool, bool]:
    """(m(S (x) id)Delta == eps, m(id (x) S)Delta == eps) on a basis monomial."""
    x = _mono_elem(m)
    d = _delta_mono(m)
    S = _PRINTED_ANTIPODE if printed else _AXIOM_ANTIPODE
    target = AlgebraElement.scalar(counit(x))
    return _mult_tensor(d, left=S) == target, _mult_tensor(d, right=S) == target


@dataclass
class HopfReport:
    max_degree: int
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    errata: List[dict] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "max_degree": self.max_degree,
            "monomials_checked": self.checked,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
            "failures": self.failures,
            "errata": self.errata,
        }


def antipode_errata() -> List[dict]:
    """Compare the transcribed antipode on e1, e2 with the axiom-derived one."""
    out = []
    for letter, name in ((1, "e1"), (2, "e2")):
        m = PBWMonomial((0, 0, 0, 0, 0, 1) if letter == 1 else (1, 0, 0, 0, 0, 0), (0, 0))
        ok_left, ok_right = antipode_holds(m, printed=True)
        if not (ok_left and ok_right):
            d = _delta_mono(m)
            out.append({
                "generator": name,
                "printed": str(_PRINTED_ANTIPODE.letter(letter)),
                "axiom_derived": str(solve_antipode_generator(letter)),
                "m(S(x)id)Delta_with_printed": str(_mult_tensor(d, left=_PRINTED_ANTIPODE)),
                "m(id(x)S)Delta_with_printed": str(_mult_tensor(d, right=_PRINTED_ANTIPODE)),
            })
    return out


def check_hopf_axioms(max_degree: int = 3, k_range=(-1, 0, 1), pair_samples: int = 40,
                      seed: int = 0) -> HopfReport:
    """Coassociativity, counit and antipode on every basis monomial of bounded degree,
    plus multiplicativity of Delta, eps and anti-multiplicativity of S on sampled pairs."""
    if max_degree > 4:
        raise ValueError("max_degree above 4 is not supported (cost control)")
    report = HopfReport(max_degree)
    monos = basis_monomials(max_degree, k_range)
    for m in monos:
        report.checked += 1
        name = monomial_to_text(m)
        if not coassociativity_holds(m):
            report.failures.append({"axiom": "coassociativity", "monomial": name})
        if not counit_holds(m):
            report.failures.append({"axiom": "counit", "monomial": name})
        left, right = antipode_holds(m)
        if not left:
            report.failures.append({"axiom": "antipode m(S(x)id)Delta", "monomial": name})
        if not right:
            report.failures.append({"axiom": "antipode m(id(x)S)Delta", "monomial": name})
    rng = random.Random(seed)
    small = [m for m in monos if m.degree() <= max(1, max_degree - 1)]
    for _ in range(pair_samples):
        a, b = rng.choice(small), rng.choice(small)
        x, y = _mono_elem(a), _mono_elem(b)
        xy = multiply(x, y)
        pair = f"{monomial_to_text(a)} * {monomial_to_text(b)}"
        report.pairs_checked += 1
        if coproduct(xy) != tensor_multiply(coproduct(x), coproduct(y)):
            report.failures.append({"axiom": "Delta multiplicative", "pair": pair})
        if counit(xy) != counit(x) * counit(y):
            report.failures.append({"axiom": "eps multiplicative", "pair": pair})
        if antipode(xy) != multiply(antipode(y), antipode(x)):
            report.failures.append({"axiom": "S anti-multiplicative", "pair": pair})
    report.errata = antipode_errata()
    return report


def tensor_weights_consistent(x: AlgebraElement) -> bool:
    """Every tensor term of Delta(x) has factor weights summing to the weight of x."""
    target = {weight(m) for m in x.terms}
    if len(target) != 1:
        raise ValueError("x must be homogeneous")
    (w,) = target
    for a, b in coproduct(x).terms:
        wa, wb = weight(a), weight(b)
        if (wa[0] + wb[0], wa[1] + wb[1]) != w:
            return False
    return True
