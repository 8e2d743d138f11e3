"""Exact arithmetic core: rationals, multivariate polynomials, rational
functions with factored denominators, and truncated 1/x series tails.

Everything here is immutable after construction and exact (built on
``fractions.Fraction``); no floating point enters any computation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

# Canonical variable order.  t stands for 1/kappa; alpha is the scaled
# high-temperature parameter.
VARIABLES = ("N", "a", "b", "t", "alpha")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * _NVARS

Scalar = Union[Rational, int]


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class MultiPoly:
    """Multivariate polynomial over exact rationals in the canonical
    variables (N, a, b, t, alpha).

    Terms map exponent tuples to nonzero Fraction coefficients; zero
    coefficients are never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        cleaned = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff:
                    if len(exps) != _NVARS:
                        raise ValueError(f"exponent tuple must have length {_NVARS}")
                    cleaned[tuple(exps)] = coeff
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        value = _as_fraction(value)
        return cls({_ZERO_EXP: value}) if value else cls()

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; must be one of {VARIABLES}")
        exps = [0] * _NVARS
        exps[_VAR_INDEX[name]] = 1
        return cls({tuple(exps): Fraction(1)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def variables(self) -> tuple:
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(VARIABLES[i])
        return tuple(v for v in VARIABLES if v in used)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(exps) for exps in self.terms)

    def degree_in(self, var: str) -> int:
        i = _VAR_INDEX[var]
        if not self.terms:
            return 0
        return max(exps[i] for exps in self.terms)

    def coeff_of(self, var: str, power: int) -> "MultiPoly":
        """Collect the coefficient of var**power, with var removed."""
        i = _VAR_INDEX[var]
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                reduced = list(exps)
                reduced[i] = 0
                out[tuple(reduced)] = coeff
        return MultiPoly(out)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = out.get(exps, Fraction(0)) + coeff
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return _coerce_poly(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                new = out.get(exps, Fraction(0)) + c1 * c2
                if new:
                    out[exps] = new
                else:
                    out.pop(exps, None)
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(tuple(sorted(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- evaluation and substitution ----------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Exact evaluation; every variable appearing in the polynomial
        must be assigned."""
        missing = [v for v in self.variables() if v not in assignment]
        if missing:
            raise ValueError(f"missing variable(s) in assignment: {missing}")
        values = {name: _as_fraction(v) for name, v in assignment.items()}
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    term *= values[VARIABLES[i]] ** e
            total += term
        return total

    def subs(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for variables; unmapped variables stay."""
        out = MultiPoly.zero()
        for exps, coeff in self.terms.items():
            term = MultiPoly.const(coeff)
            for i, e in enumerate(exps):
                if not e:
                    continue
                name = VARIABLES[i]
                if name in mapping:
                    term = term * (mapping[name] ** e)
                else:
                    term = term * (MultiPoly.var(name) ** e)
            out = out + term
        return out

    def subs_rational(self, mapping: Mapping[str, "RationalFn"]) -> "RationalFn":
        """Substitute rational functions for variables."""
        out = RationalFn.const(0)
        for exps, coeff in self.terms.items():
            term = RationalFn.const(coeff)
            for i, e in enumerate(exps):
                if not e:
                    continue
                name = VARIABLES[i]
                if name in mapping:
                    term = term * (mapping[name] ** e)
                else:
                    term = term * (RationalFn.var(name) ** e)
            out = out + term
        return out

    # -- content and exact division ------------------------------------------

    def content_primitive(self) -> tuple:
        """Split into (content, primitive part): primitive has integer
        coefficients with gcd 1 and positive leading (lex-max) coefficient."""
        if not self.terms:
            return Fraction(0), MultiPoly.zero()
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = gcd(num_gcd, abs(coeff.numerator))
            den_lcm = den_lcm * coeff.denominator // gcd(den_lcm, coeff.denominator)
        content = Fraction(num_gcd, den_lcm)
        lead = max(self.terms)
        if self.terms[lead] < 0:
            content = -content
        prim = MultiPoly({e: c / content for e, c in self.terms.items()})
        return content, prim

    def exact_div(self, divisor: "MultiPoly"):
        """Return self/divisor if the division is exact, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return MultiPoly.zero()
        if divisor.is_constant():
            c = divisor.constant_value()
            return MultiPoly({e: v / c for e, v in self.terms.items()})
        rem = dict(self.terms)
        quot = {}
        dlead = max(divisor.terms)
        dcoeff = divisor.terms[dlead]
        while rem:
            rlead = max(rem)
            qexp = tuple(r - d for r, d in zip(rlead, dlead))
            if any(e < 0 for e in qexp):
                return None
            qc = rem[rlead] / dcoeff
            quot[qexp] = qc
            for dexp, dc in divisor.terms.items():
                exps = tuple(q + d for q, d in zip(qexp, dexp))
                new = rem.get(exps, Fraction(0)) - qc * dc
                if new:
                    rem[exps] = new
                else:
                    rem.pop(exps, None)
        return MultiPoly(quot)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list:
        """Canonical JSON form: list of {exponents, num, den}, sorted."""
        return [
            {"exponents": list(exps), "num": str(c.numerator), "den": str(c.denominator)}
            for exps, c in sorted(self.terms.items())
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self.terms.items(), reverse=True):
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e > 1:
                    factors.append(f"{VARIABLES[i]}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _coerce_poly(value):
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.const(value)
    return NotImplemented


class RationalFn:
    """Quotient of multivariate polynomials.

    The denominator is kept as a product of primitive factors with integer
    exponents; after every operation each factor is cancelled against the
    numerator by exact division while possible.  Equality is decided by
    cross-multiplication, so representatives never need a polynomial gcd.
    """

    __slots__ = ("num", "den_factors", "_hash")

    def __init__(self, num, den=None):
        num = _coerce_poly(num)
        if num is NotImplemented:
            raise TypeError("numerator must be MultiPoly, int or Fraction")
        factors = {}
        if den is None:
            pass
        elif isinstance(den, dict):
            for f, e in den.items():
                if e:
                    factors[f] = factors.get(f, 0) + e
        else:
            den_poly = _coerce_poly(den)
            if den_poly is NotImplemented:
                raise TypeError("denominator must be MultiPoly, dict, int or Fraction")
            if den_poly.is_zero():
                raise ZeroDivisionError("zero denominator")
            content, prim = den_poly.content_primitive()
            num = num * Fraction(1, 1) * (1 / content)
            if not prim.is_constant():
                factors[prim] = 1
        num, factors = _cancel(num, factors)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_factors", factors)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def const(cls, value: Scalar) -> "RationalFn":
        return cls(MultiPoly.const(value))

    @classmethod
    def var(cls, name: str) -> "RationalFn":
        return cls(MultiPoly.var(name))

    @classmethod
    def _raw(cls, num: MultiPoly, factors: dict) -> "RationalFn":
        num, factors = _cancel(num, factors)
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_factors", factors)
        object.__setattr__(self, "_hash", None)
        return self

    # -- queries ---------------------------------------------------------------

    @property
    def numerator(self) -> MultiPoly:
        return self.num

    @property
    def denominator(self) -> MultiPoly:
        out = MultiPoly.const(1)
        for f, e in self.den_factors.items():
            out = out * (f ** e)
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den_factors

    def as_poly(self) -> MultiPoly:
        if self.den_factors:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def is_constant(self) -> bool:
        return not self.den_factors and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value()

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other) -> "RationalFn":
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den_factors == other.den_factors:
            return RationalFn._raw(self.num + other.num, dict(self.den_factors))
        lcd = dict(self.den_factors)
        for f, e in other.den_factors.items():
            lcd[f] = max(lcd.get(f, 0), e)
        left = self.num
        for f, e in lcd.items():
            extra = e - self.den_factors.get(f, 0)
            if extra:
                left = left * (f ** extra)
        right = other.num
        for f, e in lcd.items():
            extra = e - other.den_factors.get(f, 0)
            if extra:
                right = right * (f ** extra)
        return RationalFn._raw(left + right, lcd)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn._raw(-self.num, dict(self.den_factors))

    def __sub__(self, other) -> "RationalFn":
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFn":
        return _coerce_rational(other) - self

    def __mul__(self, other) -> "RationalFn":
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        factors = dict(self.den_factors)
        for f, e in other.den_factors.items():
            factors[f] = factors.get(f, 0) + e
        return RationalFn._raw(self.num * other.num, factors)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        content, prim = self.num.content_primitive()
        num = MultiPoly.const(1 / content)
        for f, e in self.den_factors.items():
            num = num * (f ** e)
        factors = {} if prim.is_constant() else {prim: 1}
        return RationalFn._raw(num, factors)

    def __truediv__(self, other) -> "RationalFn":
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFn":
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RationalFn":
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalFn.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den_factors == other.den_factors:
            return self.num == other.num
        return self.num * other.denominator == other.num * self.denominator

    # Cross-multiplied equality admits no cheap representation-independent
    # hash; RationalFn values are not used as dict keys.
    __hash__ = None

    # -- evaluation / substitution -----------------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        den = Fraction(1)
        for f, e in self.den_factors.items():
            v = f.eval(assignment)
            if v == 0:
                raise ZeroDivisionError(f"denominator factor {f} vanishes at {assignment}")
            den *= v ** e
        return self.num.eval(assignment) / den

    def subs(self, mapping: Mapping[str, "RationalFn"]) -> "RationalFn":
        out = self.num.subs_rational(mapping)
        for f, e in self.den_factors.items():
            fsub = f.subs_rational(mapping)
            if fsub.is_zero():
                raise ZeroDivisionError(f"denominator factor {f} vanishes under substitution")
            out = out * (fsub.inverse() ** e)
        return out

    def subs_poly(self, mapping: Mapping[str, MultiPoly]) -> "RationalFn":
        return self.subs({k: RationalFn(v) for k, v in mapping.items()})

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.denominator.to_json()}

    def __str__(self) -> str:
        if not self.den_factors:
            return str(self.num)
        return f"({self.num}) / ({self.denominator})"

    __repr__ = __str__


def _cancel(num: MultiPoly, factors: dict) -> tuple:
    """Cancel denominator factors into the numerator by exact division."""
    if num.is_zero():
        return num, {}
    out = {}
    for f, e in factors.items():
        while e > 0:
            quo = num.exact_div(f)
            if quo is None:
                break
            num = quo
            e -= 1
        if e:
            out[f] = e
    return num, out


def _coerce_rational(value):
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, MultiPoly):
        return RationalFn(value)
    if isinstance(value, (int, Fraction)):
        return RationalFn.const(value)
    return NotImplemented


class SeriesTail:
    """Truncated expansion sum_{p=0}^{P} c_p / x^{p+1} with exact
    RationalFn coefficients.

    The truncation order P is tracked through every operation and never
    silently exceeded.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = tuple(_coerce_rational(c) for c in coeffs)
        if any(c is NotImplemented for c in coeffs):
            raise TypeError("series coefficients must be RationalFn-coercible")
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series tail must carry at least one coefficient")
        if len(coeffs) != order + 1:
            raise ValueError("coefficient count must equal order + 1")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesTail is immutable")

    def coeff(self, p: int) -> RationalFn:
        if p < 0 or p > self.order:
            raise IndexError(f"coefficient {p} beyond truncation order {self.order}")
        return self.coeffs[p]

    def truncate(self, order: int) -> "SeriesTail":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return SeriesTail(self.coeffs[: order + 1], order)

    def __add__(self, other: "SeriesTail") -> "SeriesTail":
        order = min(self.order, other.order)
        return SeriesTail(
            [self.coeffs[p] + other.coeffs[p] for p in range(order + 1)], order
        )

    def __sub__(self, other: "SeriesTail") -> "SeriesTail":
        order = min(self.order, other.order)
        return SeriesTail(
            [self.coeffs[p] - other.coeffs[p] for p in range(order + 1)], order
        )

    def __neg__(self) -> "SeriesTail":
        return SeriesTail([-c for c in self.coeffs], self.order)

    def __mul__(self, other) -> "SeriesTail":
        if isinstance(other, SeriesTail):
            return self.cauchy(other)
        scalar = _coerce_rational(other)
        if scalar is NotImplemented:
            return NotImplemented
        return SeriesTail([c * scalar for c in self.coeffs], self.order)

    __rmul__ = __mul__

    def cauchy(self, other: "SeriesTail") -> "SeriesTail":
        """Product of two tails: (sum a_p/x^{p+1})(sum b_q/x^{q+1}).

        The x^{-1} coefficient of the product is identically zero; the
        result is known one order beyond the weaker factor.
        """
        order = min(self.order, other.order) + 1
        coeffs = [RationalFn.const(0)]
        for r in range(1, order + 1):
            acc = RationalFn.const(0)
            for s in range(r):
                acc = acc + self.coeffs[s] * other.coeffs[r - 1 - s]
            coeffs.append(acc)
        return SeriesTail(coeffs, order)

    def deriv(self) -> "SeriesTail":
        """d/dx: sum c_p/x^{p+1} -> sum -(p+1) c_p / x^{p+2}."""
        coeffs = [RationalFn.const(0)]
        for r in range(1, self.order + 2):
            coeffs.append(self.coeffs[r - 1] * Fraction(-r))
        return SeriesTail(coeffs, self.order + 1)

    def mul_inv_x(self) -> "SeriesTail":
        return SeriesTail((RationalFn.const(0),) + self.coeffs, self.order + 1)

    def mul_x(self) -> tuple:
        """Multiply by x.  Returns (constant term, shifted tail).

        The old c_0 becomes a constant outside the tail format and is
        returned separately.
        """
        if self.order == 0:
            raise ValueError("order underflow: multiplying a single-term tail by x")
        return self.coeffs[0], SeriesTail(self.coeffs[1:], self.order - 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTail):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __str__(self) -> str:
        parts = [f"({c})/x^{p + 1}" for p, c in enumerate(self.coeffs)]
        return " + ".join(parts) + f"  [order {self.order}]"

    __repr__ = __str__


def poly_eval(p: MultiPoly, assignment: Mapping[str, Scalar]) -> Fraction:
    """Exact evaluation of a polynomial at a rational point."""
    return p.eval(assignment)


def poly_interpolate(points: Iterable[tuple], var: str = "N") -> MultiPoly:
    """Unique minimal-degree polynomial through exact (x, y) pairs."""
    xs, ys = [], []
    for x, y in points:
        xs.append(_as_fraction(x))
        ys.append(MultiPoly.const(y) if isinstance(y, (int, Fraction)) else y)
    return interpolate_values(xs, ys, var)


def interpolate_values(xs: Sequence[Fraction], ys: Sequence[MultiPoly], var: str) -> MultiPoly:
    """Lagrange interpolation in `var` with MultiPoly-valued ordinates.

    Abscissae must be distinct rationals; ordinates may involve the other
    canonical variables (but not `var` itself).
    """
    if len(xs) != len(ys):
        raise ValueError("abscissae and ordinates must have equal length")
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation data")
    x = MultiPoly.var(var)
    total = MultiPoly.zero()
    for i, xi in enumerate(xs):
        basis = MultiPoly.const(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * (x - MultiPoly.const(xj))
            denom *= xi - xj
        total = total + ys[i] * basis * (1 / denom)
    return total
