"""PBW normal forms for the augmented algebra generated by e1, e2, k1, k2.

A basis monomial is ``X1^n1 ... X6^n6 k1^m k2^n`` where the root vectors are

    X6 = e1, X1 = e2, X2 = e1 e2 - s^3 e2 e1,
    X4 = e1 X2 - r s^2 X2 e1, X5 = e1 X4 - r^2 s X4 e1,
    X3 = X4 X2 - r^2 s X2 X4.

Products are straightened with a memoized table of ``X_j X_i`` (i < j)
obtained from the free-algebra rewriting system; k-factors are moved right
with the scalar determined by weight.
"""
from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from .coefficients import (
    LaurentPoly,
    LocalizedPoly,
    r_s_monomial,
    scalar_evaluate,
    scalar_inverse,
    scalar_to_json,
)
from .free_algebra import (
    FreeElement,
    RewriteSystem,
    Word,
    deglex_key,
    default_system,
    nf_reduce,
    word_weight,
)

NROOTS = 6

# (e1-count, e2-count) of X1..X6
ROOT_WEIGHTS: Tuple[Tuple[int, int], ...] = ((0, 1), (1, 1), (3, 2), (2, 1), (3, 1), (1, 0))
ROOT_DEGREES: Tuple[int, ...] = tuple(p + q for p, q in ROOT_WEIGHTS)

# k_i e_j = scalar * e_j k_i, as (r-exponent, s-exponent)
K_E_EXPONENTS = {
    (1, 1): (-1, -2),
    (1, 2): (3, 3),
    (2, 1): (-3, -3),
    (2, 2): (6, 3),
}


class PBWMonomial(NamedTuple):
    x: Tuple[int, int, int, int, int, int]
    k: Tuple[int, int] = (0, 0)

    def degree(self) -> int:
        return sum(n * d for n, d in zip(self.x, ROOT_DEGREES))

    def __str__(self):
        return monomial_to_text(self)


ONE_MONO = PBWMonomial((0,) * NROOTS, (0, 0))


def x_mono(*exps, k=(0, 0)) -> PBWMonomial:
    """``x_mono(1, 0, 0, 0, 0, 2)`` is X1 X6^2."""
    exps = tuple(exps) + (0,) * (NROOTS - len(exps))
    return PBWMonomial(tuple(exps), tuple(k))


def gen_mono(i: int, power: int = 1) -> PBWMonomial:
    x = [0] * NROOTS
    x[i - 1] = power
    return PBWMonomial(tuple(x), (0, 0))


def k_mono(m: int, n: int) -> PBWMonomial:
    return PBWMonomial((0,) * NROOTS, (m, n))


def monomial_sort_key(m: PBWMonomial):
    return (m.degree(), m.x, m.k)


def monomial_to_text(m: PBWMonomial) -> str:
    parts = []
    for i, n in enumerate(m.x, start=1):
        if n == 1:
            parts.append(f"X{i}")
        elif n:
            parts.append(f"X{i}^{n}")
    for i, n in enumerate(m.k, start=1):
        if n == 1:
            parts.append(f"k{i}")
        elif n:
            parts.append(f"k{i}^{n}")
    return "*".join(parts) if parts else "1"


def weight(m) -> Tuple[int, int]:
    """(e1-degree, e2-degree) of a monomial or of an exponent 6-tuple."""
    x = m.x if isinstance(m, PBWMonomial) else m
    p = q = 0
    for n, (a, b) in zip(x, ROOT_WEIGHTS):
        p += n * a
        q += n * b
    return (p, q)


def k_move_exponents(w: Tuple[int, int], m: int, n: int) -> Tuple[int, int]:
    """(r, s) exponents of the scalar c with k1^m k2^n u = c u k1^m k2^n for u of weight w."""
    p, q = w
    re = m * (p * K_E_EXPONENTS[1, 1][0] + q * K_E_EXPONENTS[1, 2][0]) \
        + n * (p * K_E_EXPONENTS[2, 1][0] + q * K_E_EXPONENTS[2, 2][0])
    se = m * (p * K_E_EXPONENTS[1, 1][1] + q * K_E_EXPONENTS[1, 2][1]) \
        + n * (p * K_E_EXPONENTS[2, 1][1] + q * K_E_EXPONENTS[2, 2][1])
    return re, se


def k_move_scalar(w: Tuple[int, int], m: int, n: int) -> LaurentPoly:
    return r_s_monomial(*k_move_exponents(w, m, n))


# root vectors in the free algebra ----------------------------------------------

def _build_root_vectors() -> Dict[int, FreeElement]:
    e1 = FreeElement.word((1,))
    e2 = FreeElement.word((2,))
    rv = {6: e1, 1: e2}
    rv[2] = e1 * e2 - (e2 * e1).scale(r_s_monomial(0, 3))
    rv[4] = e1 * rv[2] - (rv[2] * e1).scale(r_s_monomial(1, 2))
    rv[5] = e1 * rv[4] - (rv[4] * e1).scale(r_s_monomial(2, 1))
    rv[3] = rv[4] * rv[2] - (rv[2] * rv[4]).scale(r_s_monomial(2, 1))
    return rv


_ROOT_VECTORS = _build_root_vectors()


def root_vector(i: int) -> FreeElement:
    if i not in _ROOT_VECTORS:
        raise IndexError(f"root vector index must be in 1..6, got {i}")
    return _ROOT_VECTORS[i]


# elements ------------------------------------------------------------------------

def _is_scalar(c) -> bool:
    return isinstance(c, (LaurentPoly, LocalizedPoly))


class AlgebraElement:
    """Linear combination of PBW monomials.

    Coefficients are Laurent polynomials, or ``LocalizedPoly`` when a
    straightening constant with denominator ``r + s`` is involved.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[PBWMonomial, LaurentPoly]] = None):
        clean: Dict[PBWMonomial, LaurentPoly] = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, PBWMonomial):
                m = PBWMonomial(tuple(m[0]), tuple(m[1]))
            if any(v < 0 for v in m.x):
                raise ValueError(f"negative root-vector exponent in {m}")
            if not _is_scalar(c):
                c = LaurentPoly.const(c)
            if m in clean:
                c = clean[m] + c
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, m: PBWMonomial, coeff=1) -> "AlgebraElement":
        return cls({m: coeff})

    @classmethod
    def scalar(cls, c) -> "AlgebraElement":
        return cls({ONE_MONO: c})

    @classmethod
    def one(cls) -> "AlgebraElement":
        return cls({ONE_MONO: 1})

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls._raw({})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return AlgebraElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgebraElement":
        if not _is_scalar(c):
            c = LaurentPoly.const(c)
        out = {}
        for m, v in self.terms.items():
            t = v * c
            if t:
                out[m] = t
        return AlgebraElement._raw(out)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = AlgebraElement.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_sort_key(kv[0]), reverse=True)

    def coefficient(self, m: PBWMonomial):
        return self.terms.get(m, LaurentPoly.zero())

    def is_homogeneous(self) -> bool:
        return len({weight(m) for m in self.terms}) <= 1

    def max_degree(self) -> int:
        return max((m.degree() for m in self.terms), default=0)

    def map_coefficients(self, fn) -> "AlgebraElement":
        return AlgebraElement({m: fn(c) for m, c in self.terms.items()})

    def __str__(self):
        return element_to_text(self)

    __repr__ = __str__

    def to_json(self):
        return [
            {"monomial": monomial_to_text(m), "x": list(m.x), "k": list(m.k), "coeff": scalar_to_json(c)}
            for m, c in self.sorted_terms()
        ]


def _coeff_text(c) -> str:
    text = str(c)
    if isinstance(c, LaurentPoly) and len(c.terms) == 1:
        return text
    return f"({text})"


def element_to_text(x: AlgebraElement) -> str:
    """Canonical text: ``coeff*X1^a*...*k2^n`` terms joined with `` + ``."""
    if not x.terms:
        return "0"
    parts = []
    for m, c in x.sorted_terms():
        mono = monomial_to_text(m)
        if mono == "1":
            parts.append(_coeff_text(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_coeff_text(c)}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") and not p.startswith("-(") else " + " + p
    return out


# exponent-vector enumeration ---------------------------------------------------

def x_vectors_of_weight(w: Tuple[int, int]) -> List[Tuple[int, ...]]:
    """All X-exponent vectors of a given weight, sorted descending."""
    p, q = w
    out = []

    def rec(i, rp, rq, acc):
        if i == NROOTS:
            if rp == 0 and rq == 0:
                out.append(tuple(acc))
            return
        a, b = ROOT_WEIGHTS[i]
        n = 0
        while n * a <= rp and n * b <= rq:
            rec(i + 1, rp - n * a, rq - n * b, acc + [n])
            n += 1

    rec(0, p, q, [])
    return sorted(out, reverse=True)


def x_vectors_of_degree(n: int) -> List[Tuple[int, ...]]:
    out = []
    for p in range(n + 1):
        out.extend(x_vectors_of_weight((p, n - p)))
    return sorted(out, key=lambda v: (sum(a * d for a, d in zip(v, ROOT_DEGREES)), v), reverse=True)


def basis_monomials(max_degree: int, k_range: Iterable[int] = (0,)) -> List[PBWMonomial]:
    """PBW monomials of e-degree <= max_degree with both k-exponents in ``k_range``."""
    k_range = list(k_range)
    out = []
    for d in range(max_degree + 1):
        for v in x_vectors_of_degree(d):
            for m in k_range:
                for n in k_range:
                    out.append(PBWMonomial(v, (m, n)))
    return out


def graded_dimension(n: int) -> int:
    """Number of X-monomials of total e-degree n (coefficient of t^n in the Hilbert series)."""
    if n < 0:
        return 0
    counts = [1] + [0] * n
    for d in ROOT_DEGREES:
        for i in range(d, n + 1):
            counts[i] += counts[i - d]
    return counts[n]


# free <-> PBW ---------------------------------------------------------------------

def x_vector_to_free(x: Tuple[int, ...]) -> FreeElement:
    out = FreeElement.one()
    for i, n in enumerate(x, start=1):
        for _ in range(n):
            out = out * _ROOT_VECTORS[i]
    return out


def pbw_to_free(x: AlgebraElement) -> FreeElement:
    """Expand root vectors into words; k-exponents must all be zero."""
    out = FreeElement()
    for m, c in x.terms.items():
        if any(m.k):
            raise ValueError(f"cannot map {monomial_to_text(m)} to the free algebra: nonzero k-exponent")
        out = out + x_vector_to_free(m.x).scale(c)
    return out


class _WeightSpace:
    """Echelonized normal forms of the PBW monomials of one weight."""

    def __init__(self, w: Tuple[int, int], sys: RewriteSystem):
        self.weight = w
        self.pivots: Dict[Word, Tuple[Dict[Word, object], Dict[Tuple[int, ...], object]]] = {}
        for v in x_vectors_of_weight(w):
            row = dict(nf_reduce(x_vector_to_free(v), sys).terms)
            track = {v: LaurentPoly.const(1)}
            row, track = self._reduce(row, track)
            if not row:
                raise ArithmeticError(f"PBW monomials of weight {w} are linearly dependent modulo the relations")
            lead = max(row, key=deglex_key)
            self.pivots[lead] = (row, track)

    def _reduce(self, row, track):
        while row:
            lead = max(row, key=deglex_key)
            piv = self.pivots.get(lead)
            if piv is None:
                break
            prow, ptrack = piv
            f = row[lead] * scalar_inverse(prow[lead])
            row = _axpy(row, prow, -f)
            track = _axpy(track, ptrack, -f)
        return row, track

    def solve(self, target: Dict[Word, object]) -> Dict[Tuple[int, ...], object]:
        row, coords = dict(target), {}
        while row:
            lead = max(row, key=deglex_key)
            piv = self.pivots.get(lead)
            if piv is None:
                raise ArithmeticError(
                    f"normal form is not in the span of PBW monomials of weight {self.weight}")
            prow, ptrack = piv
            f = row[lead] * scalar_inverse(prow[lead])
            row = _axpy(row, prow, -f)
            coords = _axpy(coords, ptrack, f)
        return coords


def _axpy(a: Dict, b: Dict, f) -> Dict:
    out = dict(a)
    for k, v in b.items():
        t = out[k] + v * f if k in out else v * f
        if t:
            out[k] = t
        else:
            out.pop(k, None)
    return out


_WEIGHT_SPACES: Dict[Tuple[int, int], _WeightSpace] = {}
_WS_LOCK = threading.Lock()


def _weight_space(w: Tuple[int, int]) -> _WeightSpace:
    ws = _WEIGHT_SPACES.get(w)
    if ws is None:
        with _WS_LOCK:
            ws = _WEIGHT_SPACES.get(w)
            if ws is None:
                ws = _WeightSpace(w, default_system())
                _WEIGHT_SPACES[w] = ws
    return ws


def free_to_pbw(f: FreeElement) -> AlgebraElement:
    """Unique PBW expansion of a free-algebra element modulo the relations."""
    nf = nf_reduce(f)
    by_weight: Dict[Tuple[int, int], Dict[Word, object]] = {}
    for w, c in nf.terms.items():
        by_weight.setdefault(word_weight(w), {})[w] = c
    out: Dict[PBWMonomial, LaurentPoly] = {}
    for wt, part in by_weight.items():
        for v, c in _weight_space(wt).solve(part).items():
            out[PBWMonomial(v, (0, 0))] = c
    return AlgebraElement(out)


# straightening and multiplication -------------------------------------------------

def _unit_vec(i: int) -> Tuple[int, ...]:
    v = [0] * NROOTS
    v[i - 1] = 1
    return tuple(v)


def straighten_pair(i: int, j: int) -> AlgebraElement:
    """PBW form of X_j X_i for 1 <= i < j <= 6."""
    if not (1 <= i < j <= NROOTS):
        raise ValueError(f"straighten_pair needs 1 <= i < j <= 6, got ({i}, {j})")
    return DEFAULT_ALGEBRA.table_entry(i, j)


class PBWAlgebra:
    """Multiplication engine; with ``point`` every structure constant is specialized.

    The specialized engine never sees symbolic coefficients of its inputs:
    callers specialize elements first (``specialize``) and multiply after.
    """

    def __init__(self, point: Optional[Mapping[str, Fraction]] = None, step_budget: int = 5_000_000):
        self.point = dict(point) if point is not None else None
        self._table: Dict[Tuple[int, int], Dict[Tuple[int, ...], object]] = {}
        self._mul_cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Dict[Tuple[int, ...], object]] = {}
        self._gen_cache: Dict[Tuple[Tuple[int, ...], int], Dict[Tuple[int, ...], object]] = {}
        self._lock = threading.RLock()
        self.step_budget = step_budget
        self._steps = 0

    def _conv(self, c):
        if self.point is None:
            return c
        return LaurentPoly.const(scalar_evaluate(c, self.point))

    def kscalar(self, w, m, n):
        c = k_move_scalar(w, m, n)
        return self._conv(c) if self.point is not None else c

    def table_entry(self, i: int, j: int) -> AlgebraElement:
        return AlgebraElement({PBWMonomial(v, (0, 0)): c for v, c in self._table_raw(i, j).items()})

    def _table_raw(self, i: int, j: int):
        key = (i, j)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._table.get(key)
            if hit is None:
                if self.point is None:
                    prod = _ROOT_VECTORS[j] * _ROOT_VECTORS[i]
                    hit = {m.x: c for m, c in free_to_pbw(prod).terms.items()}
                else:
                    hit = {v: self._conv(c) for v, c in DEFAULT_ALGEBRA._table_raw(i, j).items()}
                self._table[key] = hit
        return hit

    def _tick(self):
        self._steps += 1
        if self._steps > self.step_budget:
            raise RuntimeError("straightening step budget exhausted")

    def mul_gen(self, a: Tuple[int, ...], i: int) -> Dict[Tuple[int, ...], object]:
        """X^a * X_i as a combination of ordered monomials."""
        key = (a, i)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        j = max((t + 1 for t in range(NROOTS) if a[t]), default=0)
        if j <= i:
            b = list(a)
            b[i - 1] += 1
            result = {tuple(b): LaurentPoly.const(1)}
        else:
            self._tick()
            rest = list(a)
            rest[j - 1] -= 1
            rest = tuple(rest)
            result = {}
            for v, c in self._table_raw(i, j).items():
                for u, d in self.mul_x(rest, v).items():
                    t = result[u] + c * d if u in result else c * d
                    if t:
                        result[u] = t
                    else:
                        result.pop(u, None)
        self._gen_cache[key] = result
        return result

    def mul_x(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Dict[Tuple[int, ...], object]:
        """X^a * X^b straightened."""
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        first = next((t for t in range(NROOTS) if b[t]), None)
        if first is None:
            result = {a: LaurentPoly.const(1)}
        elif not any(a):
            result = {b: LaurentPoly.const(1)}
        else:
            rest = list(b)
            rest[first] -= 1
            rest = tuple(rest)
            result = {}
            for v, c in self.mul_gen(a, first + 1).items():
                for u, d in self.mul_x(v, rest).items():
                    t = result[u] + c * d if u in result else c * d
                    if t:
                        result[u] = t
                    else:
                        result.pop(u, None)
        self._mul_cache[key] = result
        return result

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: Dict[PBWMonomial, object] = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                coef = c1 * c2 * self.kscalar(weight(m2), *m1.k)
                k = (m1.k[0] + m2.k[0], m1.k[1] + m2.k[1])
                for v, d in self.mul_x(m1.x, m2.x).items():
                    mono = PBWMonomial(v, k)
                    t = out[mono] + coef * d if mono in out else coef * d
                    if t:
                        out[mono] = t
                    else:
                        out.pop(mono, None)
        return AlgebraElement._raw(out)

    def product(self, factors: Iterable[AlgebraElement]) -> AlgebraElement:
        out = AlgebraElement.one()
        for f in factors:
            out = self.multiply(out, f)
        return out


DEFAULT_ALGEBRA = PBWAlgebra()


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return DEFAULT_ALGEBRA.multiply(x, y)


def product(factors: Iterable[AlgebraElement]) -> AlgebraElement:
    return DEFAULT_ALGEBRA.product(factors)


def straightening_table() -> Dict[Tuple[int, int], AlgebraElement]:
    return {(i, j): straighten_pair(i, j) for i, j in itertools.combinations(range(1, NROOTS + 1), 2)}


def specialize(x: AlgebraElement, point: Mapping[str, Fraction]) -> AlgebraElement:
    """Evaluate every coefficient at ``point`` (constant Laurent coefficients)."""
    return AlgebraElement({m: LaurentPoly.const(scalar_evaluate(c, point)) for m, c in x.terms.items()})


# convenience generators ---------------------------------------------------------------

def e1() -> AlgebraElement:
    return AlgebraElement.monomial(gen_mono(6))


def e2() -> AlgebraElement:
    return AlgebraElement.monomial(gen_mono(1))


def k_elem(m: int, n: int, coeff=1) -> AlgebraElement:
    return AlgebraElement.monomial(k_mono(m, n), coeff)


def X(i: int) -> AlgebraElement:
    return AlgebraElement.monomial(gen_mono(i))


def leading_monomial(x: AlgebraElement) -> PBWMonomial:
    """Deglex-largest monomial ignoring k-parts for the degree (ties broken by k)."""
    return max(x.terms, key=monomial_sort_key)
