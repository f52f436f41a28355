"""Exact Laurent polynomials in commuting unit variables.

Every scalar in the kernel lives here: the deformation parameters ``r``, ``s``
and, for automorphism work, formal units ``lambda1, lambda2, gamma1, gamma2``.
Coefficients are Python integers; rationals (``fractions.Fraction``) are
tolerated so that numeric specializations and non-unit constant scalars can be
carried through the same code paths.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

CORE_VARS: Tuple[str, ...] = ("r", "s")
EXTENDED_VARS: Tuple[str, ...] = ("r", "s", "lambda1", "lambda2", "gamma1", "gamma2")

Exps = Tuple[int, ...]


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Sparse Laurent polynomial; immutable after construction.

    ``names`` fixes the variable order; ``terms`` maps exponent tuples (one
    entry per name) to nonzero coefficients.
    """

    __slots__ = ("names", "terms", "_hash")

    def __init__(self, terms: Mapping[Exps, Rational] | None = None,
                 names: Tuple[str, ...] = CORE_VARS, _trusted: bool = False):
        self.names = tuple(names)
        if _trusted:
            self.terms = terms
        else:
            n = len(self.names)
            clean: Dict[Exps, Rational] = {}
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise ValueError(f"exponent vector {e} does not match variables {self.names}")
                if c:
                    clean[e] = _norm_coeff(clean.get(e, 0) + c)
                    if not clean[e]:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, names=CORE_VARS) -> "LaurentPoly":
        return cls({}, names, _trusted=True)

    @classmethod
    def const(cls, c, names=CORE_VARS) -> "LaurentPoly":
        c = _norm_coeff(c)
        if not c:
            return cls.zero(names)
        return cls({(0,) * len(names): c}, names, _trusted=True)

    @classmethod
    def var(cls, name: str, power: int = 1, names=CORE_VARS) -> "LaurentPoly":
        names = tuple(names)
        if name not in names:
            raise KeyError(f"unknown variable {name!r}; ring has {names}")
        e = [0] * len(names)
        e[names.index(name)] = power
        return cls({tuple(e): 1}, names, _trusted=True)

    # basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """A single term with nonzero coefficient (invertible over Q)."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    def monomial_exponents(self) -> Dict[str, int]:
        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial")
        (e,) = self.terms
        return dict(zip(self.names, e))

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(n for n, x in zip(self.names, e) if x)
        return used

    # ring coercion ----------------------------------------------------

    def extend(self, names: Tuple[str, ...]) -> "LaurentPoly":
        """Re-express over a larger variable tuple (old names must be a prefix)."""
        names = tuple(names)
        if names == self.names:
            return self
        k = len(self.names)
        if names[:k] != self.names:
            raise ValueError(f"cannot embed {self.names} into {names}")
        pad = (0,) * (len(names) - k)
        return LaurentPoly({e + pad: c for e, c in self.terms.items()}, names, _trusted=True)

    def _coerce(self, other) -> Tuple["LaurentPoly", "LaurentPoly"]:
        if not isinstance(other, LaurentPoly):
            if isinstance(other, Rational):
                return self, LaurentPoly.const(other, self.names)
            return NotImplemented
        if other.names == self.names:
            return self, other
        if len(other.names) > len(self.names):
            return self.extend(other.names), other
        return self, other.extend(self.names)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if not b.terms:
            return a
        if not a.terms:
            return b
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm_coeff(v)
            else:
                out.pop(e, None)
        return LaurentPoly(out, a.names, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.names, _trusted=True)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if not a.terms or not b.terms:
            return LaurentPoly.zero(a.names)
        out: Dict[Exps, Rational] = {}
        get = out.get
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return LaurentPoly({e: _norm_coeff(c) for e, c in out.items() if c}, a.names, _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit (single-term) polynomial."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly({tuple(-x for x in e): _norm_coeff(Fraction(1) / c)}, self.names, _trusted=True)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.const(1, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide by a unit, or by a general divisor when the quotient is exact.

        Non-unit division is done by multivariate long division on the
        lexicographically largest term; a nonzero remainder raises.
        """
        a, b = self._coerce(other)
        if b.is_unit():
            return a * b.inverse()
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        quotient = LaurentPoly.zero(a.names)
        rem = a
        lead_b = max(b.terms)
        steps = 0
        while rem.terms:
            lead_r = max(rem.terms)
            t = LaurentPoly({tuple(x - y for x, y in zip(lead_r, lead_b)):
                             Fraction(rem.terms[lead_r]) / b.terms[lead_b]}, a.names)
            quotient = quotient + t
            rem = rem - t * b
            steps += 1
            if steps > 10000:
                raise ArithmeticError(f"{a} is not divisible by {b}")
        # Laurent long division by the lex-leading term always terminates with
        # rem == 0 exactly when b divides a; guard the quotient anyway.
        if quotient * b != a:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return quotient

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = LaurentPoly.const(other, self.names)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._coerce(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            # hash independent of trailing padded variables
            items = []
            for e, c in self.terms.items():
                k = len(e)
                while k and e[k - 1] == 0:
                    k -= 1
                items.append((e[:k], c))
            self._hash = hash(frozenset(items))
        return self._hash

    # evaluation -------------------------------------------------------

    def evaluate(self, point: Mapping[str, Rational]) -> Fraction:
        return lp_evaluate(self, point)

    def substitute(self, point: Mapping[str, Rational]) -> "LaurentPoly":
        """Specialize some variables to nonzero rationals, keeping the rest formal."""
        idx = [i for i, n in enumerate(self.names) if n in point]
        out: Dict[Exps, Rational] = {}
        for e, c in self.terms.items():
            val = Fraction(c)
            e2 = list(e)
            for i in idx:
                val *= Fraction(point[self.names[i]]) ** e[i]
                e2[i] = 0
            key = tuple(e2)
            out[key] = out.get(key, 0) + val
        return LaurentPoly(out, self.names)

    # text -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        return lp_to_text(self)

    def __repr__(self):
        return f"LaurentPoly({lp_to_text(self)!r})"


# module-level operations ---------------------------------------------------

def lp_monomial(coef, exps, names: Tuple[str, ...] = CORE_VARS) -> LaurentPoly:
    """``coef * prod(v**e)``; ``exps`` is a sequence or a name->exponent mapping."""
    names = tuple(names)
    if isinstance(exps, Mapping):
        unknown = set(exps) - set(names)
        if unknown:
            raise KeyError(f"unknown variables {sorted(unknown)}")
        exps = tuple(int(exps.get(n, 0)) for n in names)
    if not coef:
        return LaurentPoly.zero(names)
    return LaurentPoly({tuple(exps): coef}, names)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def lp_evaluate(p: LaurentPoly, point: Mapping[str, Rational]) -> Fraction:
    """Exact value of ``p`` at a point assigning a nonzero rational to each used variable."""
    total = Fraction(0)
    used = p.variables()
    missing = used - set(point)
    if missing:
        raise KeyError(f"unassigned variables: {sorted(missing)}")
    vals = []
    for n in p.names:
        v = point.get(n)
        if n in used and Fraction(v) == 0:
            raise ZeroDivisionError(f"variable {n} evaluated at 0")
        vals.append(Fraction(v) if v is not None else None)
    for e, c in p.terms.items():
        term = Fraction(c)
        for v, x in zip(vals, e):
            if x:
                term *= v ** x
        total += term
    return total


def r_s_monomial(r_exp: int, s_exp: int, names=CORE_VARS) -> LaurentPoly:
    e = [0] * len(names)
    e[0], e[1] = r_exp, s_exp
    return LaurentPoly({tuple(e): 1}, tuple(names), _trusted=True)


def is_generic_point(point: Mapping[str, Rational], bound: int = 24) -> bool:
    """Reject points where r^m s^n = 1 for some small (m, n) != (0, 0)."""
    r, s = Fraction(point["r"]), Fraction(point["s"])
    if r == 0 or s == 0:
        return False
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            if (m, n) != (0, 0) and r ** m * s ** n == 1:
                return False
    return True


def generic_sample_points(rng, count: int, names: Iterable[str] = CORE_VARS):
    """Random nonzero rational points that pass the genericity filter."""
    names = tuple(names)
    pts = []
    while len(pts) < count:
        pt = {}
        for n in names:
            num = 0
            while num == 0:
                num = rng.randint(-9, 9)
            pt[n] = Fraction(num, rng.randint(1, 7))
        if is_generic_point(pt):
            pts.append(pt)
    return pts


# text form -------------------------------------------------------------------

def _fmt_coeff(c) -> str:
    return str(c)


def lp_to_text(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for n, x in zip(p.names, e):
            if x == 1:
                factors.append(n)
            elif x:
                factors.append(f"{n}^{x}")
        if not factors:
            body = _fmt_coeff(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(abs(c)) + "*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out




def lp_from_text(text: str, names: Tuple[str, ...] = CORE_VARS) -> LaurentPoly:
    """Parse a Laurent polynomial such as ``-3*r^2*s^-1 + 1``.

    Supports sums, products, parentheses, integer powers (including
    negative powers of monomials) and rational constants.
    """
    from .parsing import parse_scalar_text
    return parse_scalar_text(text, names)


def lp_to_json(p: LaurentPoly):
    out = []
    for e, c in p.sorted_terms():
        out.append({"coeff": str(c), "exps": {n: x for n, x in zip(p.names, e) if x}})
    return out


def lp_from_json(data, names: Tuple[str, ...] = CORE_VARS) -> LaurentPoly:
    p = LaurentPoly.zero(names)
    for item in data:
        p = p + lp_monomial(Fraction(item["coeff"]), item.get("exps", {}), names)
    return p


# exact division -------------------------------------------------------------

def _shift_to_poly(p: LaurentPoly):
    """Return (polynomial part, shift) with p = poly * prod(v**shift)."""
    n = len(p.names)
    mins = [min(e[i] for e in p.terms) for i in range(n)]
    poly = {tuple(x - m for x, m in zip(e, mins)): c for e, c in p.terms.items()}
    return poly, tuple(mins)


def try_exact_div(a: LaurentPoly, b: LaurentPoly):
    """``a / b`` in the Laurent ring, or ``None`` if ``b`` does not divide ``a``.

    Works by lexicographic polynomial division after clearing monomial
    factors; terminates because lex is a well-order on exponent vectors.
    """
    a, b = a._coerce(b)
    if not b.terms:
        raise ZeroDivisionError("division by zero polynomial")
    if not a.terms:
        return LaurentPoly.zero(a.names)
    if b.is_unit():
        return a * b.inverse()
    bp, bshift = _shift_to_poly(b)
    ap, ashift = _shift_to_poly(a)
    lead_b = max(bp)
    cb = bp[lead_b]
    rem = dict(ap)
    quot: Dict[Exps, Rational] = {}
    while rem:
        lead = max(rem)
        diff = tuple(x - y for x, y in zip(lead, lead_b))
        if any(d < 0 for d in diff):
            return None
        c = Fraction(rem[lead]) / cb
        quot[diff] = _norm_coeff(c)
        for e, v in bp.items():
            k = tuple(x + y for x, y in zip(diff, e))
            t = rem.get(k, 0) - c * v
            if t:
                rem[k] = _norm_coeff(t)
            else:
                rem.pop(k, None)
    shift = tuple(x - y for x, y in zip(ashift, bshift))
    return LaurentPoly({tuple(x + y for x, y in zip(e, shift)): c for e, c in quot.items()},
                       a.names, _trusted=True)


# localization ---------------------------------------------------------------

def _cyclotomic(n: int):
    """Integer coefficient list (low degree first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            den = _cyclotomic(d)
            # exact division of num by den
            q = [0] * (len(num) - len(den) + 1)
            rem = list(num)
            for i in range(len(q) - 1, -1, -1):
                c = rem[i + len(den) - 1] // den[-1]
                q[i] = c
                for j, v in enumerate(den):
                    rem[i + j] -= c * v
            num = q
    return num


def homogenized_cyclotomic(n: int, names=CORE_VARS) -> LaurentPoly:
    """Phi_n(r/s) * s^deg, an irreducible homogeneous polynomial in r and s."""
    coeffs = _cyclotomic(n)
    deg = len(coeffs) - 1
    return LaurentPoly({(i, deg - i) + (0,) * (len(names) - 2): c for i, c in enumerate(coeffs) if c},
                       tuple(names), _trusted=True)


# Denominators permitted in rewriting normal forms: Phi_n(r, s) for 2 <= n <= 24.
# Phi_1 = r - s is included as well; all are irreducible and pairwise coprime.
DENOMINATOR_CATALOG: Tuple[LaurentPoly, ...] = tuple(homogenized_cyclotomic(n) for n in range(1, 25))


class LocalizedPoly:
    """Element of the Laurent ring localized at the cyclotomic catalog.

    Stored as ``num / prod(catalog[i] ** den[i])`` in lowest terms, which makes
    the representation unique.  Used only where normal forms of words need
    division by non-unit leading coefficients.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Tuple[int, ...] = ()):
        den = tuple(den) + (0,) * (len(DENOMINATOR_CATALOG) - len(den))
        if not num.terms:
            den = (0,) * len(DENOMINATOR_CATALOG)
        elif any(den):
            den = list(den)
            for i, k in enumerate(den):
                while k:
                    q = try_exact_div(num, DENOMINATOR_CATALOG[i])
                    if q is None:
                        break
                    num, k = q, k - 1
                den[i] = k
            den = tuple(den)
        self.num = num
        self.den = den

    @staticmethod
    def lift(x) -> "LocalizedPoly":
        if isinstance(x, LocalizedPoly):
            return x
        if isinstance(x, LaurentPoly):
            return LocalizedPoly(x)
        return LocalizedPoly(LaurentPoly.const(x))

    def simplify(self):
        """Return a plain LaurentPoly when no denominator is left."""
        return self.num if not any(self.den) else self

    def _denominator(self, exps) -> LaurentPoly:
        out = LaurentPoly.const(1, self.num.names)
        for f, k in zip(DENOMINATOR_CATALOG, exps):
            if k:
                out = out * f ** k
        return out

    def __add__(self, other):
        if not isinstance(other, (LocalizedPoly, LaurentPoly, Rational)):
            return NotImplemented
        o = LocalizedPoly.lift(other)
        common = tuple(max(x, y) for x, y in zip(self.den, o.den))
        a = self.num * self._denominator([c - x for c, x in zip(common, self.den)])
        b = o.num * self._denominator([c - x for c, x in zip(common, o.den)])
        return LocalizedPoly(a + b, common).simplify()

    __radd__ = __add__

    def __neg__(self):
        return LocalizedPoly(-self.num, self.den)

    def __sub__(self, other):
        return self + (-LocalizedPoly.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (LocalizedPoly, LaurentPoly, Rational)):
            return NotImplemented
        o = LocalizedPoly.lift(other)
        return LocalizedPoly(self.num * o.num, tuple(x + y for x, y in zip(self.den, o.den))).simplify()

    __rmul__ = __mul__

    def inverse(self):
        """Invert; the numerator must be a unit times catalog factors."""
        num = self.num
        if not num.terms:
            raise ZeroDivisionError("inverse of zero")
        den = [0] * len(DENOMINATOR_CATALOG)
        for i, f in enumerate(DENOMINATOR_CATALOG):
            while not num.is_unit():
                q = try_exact_div(num, f)
                if q is None:
                    break
                num = q
                den[i] += 1
        if not num.is_unit():
            raise ArithmeticError(f"{self.num} has a factor outside the denominator catalog")
        return LocalizedPoly(num.inverse() * self._denominator(self.den), tuple(den)).simplify()

    def __eq__(self, other):
        if not isinstance(other, (LocalizedPoly, LaurentPoly, Rational)):
            return NotImplemented
        o = LocalizedPoly.lift(other)
        return self.den == o.den and self.num == o.num

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.terms)

    def is_zero(self):
        return not self.num.terms

    @property
    def names(self):
        return self.num.names

    def is_unit(self):
        return self.num.is_unit() and not any(self.den)

    def evaluate(self, point) -> Fraction:
        return lp_evaluate(self.num, point) / lp_evaluate(self._denominator(self.den), point)

    def __str__(self):
        if not any(self.den):
            return str(self.num)
        return f"({self.num})/({self._denominator(self.den)})"

    __repr__ = __str__


def scalar_inverse(c):
    """Inverse of a unit LaurentPoly, or of a localized scalar."""
    if isinstance(c, LaurentPoly) and c.is_unit():
        return c.inverse()
    return LocalizedPoly.lift(c).inverse()


def scalar_evaluate(c, point) -> Fraction:
    if isinstance(c, LocalizedPoly):
        return c.evaluate(point)
    return lp_evaluate(c, point)


def scalar_to_json(c):
    if isinstance(c, LocalizedPoly):
        return {"numerator": lp_to_json(c.num), "denominator": lp_to_json(c._denominator(c.den))}
    return lp_to_json(c)
