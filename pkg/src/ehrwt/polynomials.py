"""Exact polynomial algebra and rational generating functions.

Univariate polynomials carry exact rational coefficients in ascending
order. Weights are sparse multivariate polynomials keyed by exponent
vectors. Generating functions are kept in the canonical rational form
h(x) / (1 - x)^D with h(1) != 0 (or h = 0), which is the shape every
counting series here reduces to. No floating point is allowed anywhere.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import WeightParseError

Rational = Union[int, Fraction]

# exponents above this are almost certainly a typo in a weight expression
MAX_WEIGHT_EXPONENT = 64

__all__ = [
    "UniPoly",
    "WeightPoly",
    "RationalGF",
    "eulerian",
    "cube_series",
    "gf_of_polynomial",
    "lagrange_interpolate",
    "expand",
    "parse_weight",
    "eval_weight",
    "format_polynomial",
    "format_series",
]


def _exact(value: Rational, what: str = "coefficient") -> Fraction:
    # floats would silently poison exactness; refuse them outright
    if isinstance(value, float):
        raise TypeError(f"floating point {what} {value!r} is not allowed")
    return Fraction(value)


class UniPoly:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored ascending with no trailing zeros. The zero
    polynomial has an empty coefficient tuple and degree -infinity.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, power: int, coeff: Rational = 1) -> "UniPoly":
        if power < 0:
            raise ValueError("power must be nonnegative")
        return cls([0] * power + [coeff])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self):
        """Degree of the polynomial; float('-inf') for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else float("-inf")

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of x**power (zero when power exceeds the degree)."""
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __call__(self, value: Rational) -> Fraction:
        x = _exact(value, "evaluation point")
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("UniPoly", self._coeffs))

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self._coeffs])

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if not self._coeffs or not other._coeffs:
                return UniPoly()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
            return UniPoly(out)
        if isinstance(other, (int, Fraction)):
            f = _exact(other)
            return UniPoly([c * f for c in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = UniPoly([1])
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def div_one_minus_x(self) -> "UniPoly":
        """Exact quotient by (1 - x); requires the value at x = 1 to be 0."""
        if not self._coeffs:
            return self
        running = Fraction(0)
        out = []
        for c in self._coeffs[:-1]:
            running += c
            out.append(running)
        if running + self._coeffs[-1] != 0:
            raise ValueError("polynomial is not divisible by (1 - x)")
        return UniPoly(out)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self._coeffs]})"


class WeightPoly:
    """Sparse multivariate polynomial weight on a fixed number of variables.

    Terms map exponent vectors (tuples of nonnegative ints of length
    ``nvars``) to nonzero rational coefficients. Variables are 1-based
    when addressed through :meth:`variable`, matching the t1, t2, ...
    naming used by the expression parser. Immutable and hashable.
    """

    __slots__ = ("_nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Rational] = {}):
        if not isinstance(nvars, int) or nvars < 1:
            raise ValueError("nvars must be a positive integer")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            if any((not isinstance(e, int)) or e < 0 for e in exps):
                raise ValueError(f"exponent vector {exps} must contain nonnegative integers")
            c = _exact(coeff)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self._nvars = nvars
        self._terms = {e: c for e, c in sorted(clean.items()) if c != 0}

    @classmethod
    def constant(cls, nvars: int, value: Rational) -> "WeightPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "WeightPoly":
        """The weight t_index (1-based) on nvars variables."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range 1..{nvars}")
        exps = tuple(1 if i == index - 1 else 0 for i in range(nvars))
        return cls(nvars, {exps: 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Rational = 1) -> "WeightPoly":
        exps = tuple(exponents)
        return cls(len(exps), {exps: coeff})

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    @property
    def degree(self):
        """Total degree; float('-inf') for the zero weight."""
        if not self._terms:
            return float("-inf")
        return max(sum(e) for e in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_homogeneous(self) -> bool:
        """True when all terms share one total degree (vacuously for zero)."""
        return len({sum(e) for e in self._terms}) <= 1

    def affine_parts(self) -> tuple[tuple[Fraction, ...], Fraction]:
        """Split a weight of total degree <= 1 into (linear row, constant)."""
        if self._terms and self.degree > 1:
            raise ValueError("weight is not affine (total degree exceeds 1)")
        row = []
        for i in range(self._nvars):
            exps = tuple(1 if j == i else 0 for j in range(self._nvars))
            row.append(self._terms.get(exps, Fraction(0)))
        return tuple(row), self.constant_term

    def eval(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self._nvars:
            raise ValueError(f"point has length {len(point)}, expected {self._nvars}")
        vals = [_exact(p, "coordinate") for p in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(("WeightPoly", self._nvars, tuple(self._terms.items())))

    def __neg__(self) -> "WeightPoly":
        return WeightPoly(self._nvars, {e: -c for e, c in self._terms.items()})

    def _check_same_space(self, other: "WeightPoly") -> None:
        if self._nvars != other._nvars:
            raise ValueError("weights live on different variable counts")

    def __add__(self, other):
        if isinstance(other, WeightPoly):
            self._check_same_space(other)
            merged = dict(self._terms)
            for e, c in other._terms.items():
                merged[e] = merged.get(e, Fraction(0)) + c
            return WeightPoly(self._nvars, merged)
        if isinstance(other, (int, Fraction)):
            return self + WeightPoly.constant(self._nvars, other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (WeightPoly, int, Fraction)):
            return self + (-other if isinstance(other, WeightPoly) else -_exact(other))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, WeightPoly):
            self._check_same_space(other)
            out: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] = out.get(key, Fraction(0)) + c1 * c2
            return WeightPoly(self._nvars, out)
        if isinstance(other, (int, Fraction)):
            f = _exact(other)
            return WeightPoly(self._nvars, {e: c * f for e, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "WeightPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = WeightPoly.constant(self._nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in self._terms.items())
        return f"WeightPoly({self._nvars}, {{{body}}})"


class RationalGF:
    """Rational generating function in the canonical form h(x)/(1-x)^D.

    Construction strips (1 - x) factors shared with the denominator, so
    equal series compare equal: the invariant is h(1) != 0 or h = 0 (the
    canonical zero has D = 0). D never goes negative.
    """

    __slots__ = ("_num", "_dpow")

    def __init__(self, numerator, denom_power: int):
        num = numerator if isinstance(numerator, UniPoly) else UniPoly(numerator)
        d = int(denom_power)
        if d < 0:
            raise ValueError("denominator power must be nonnegative")
        while num and d > 0 and num(1) == 0:
            num = num.div_one_minus_x()
            d -= 1
        if not num:
            d = 0
        self._num = num
        self._dpow = d

    @property
    def numerator(self) -> UniPoly:
        return self._num

    @property
    def denom_power(self) -> int:
        return self._dpow

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self._num == other._num and self._dpow == other._dpow

    def __hash__(self) -> int:
        return hash(("RationalGF", self._num, self._dpow))

    def __neg__(self) -> "RationalGF":
        return RationalGF(-self._num, self._dpow)

    def __add__(self, other) -> "RationalGF":
        if not isinstance(other, RationalGF):
            return NotImplemented
        d = max(self._dpow, other._dpow)
        omx = UniPoly([1, -1])
        num = self._num * omx ** (d - self._dpow) + other._num * omx ** (d - other._dpow)
        return RationalGF(num, d)

    def __sub__(self, other) -> "RationalGF":
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalGF(self._num * _exact(other), self._dpow)
        return NotImplemented

    __rmul__ = __mul__

    def expand(self, count: int) -> list[Fraction]:
        """First ``count`` + 1 power-series coefficients, orders 0..count."""
        if not isinstance(count, int) or count < 0:
            raise ValueError("count must be a nonnegative integer")
        h = self._num.coeffs
        d = self._dpow
        out = []
        for n in range(count + 1):
            if d == 0:
                out.append(self._num.coefficient(n))
                continue
            # 1/(1-x)^d has coefficient C(n+d-1, d-1) at x^n
            total = Fraction(0)
            for k, c in enumerate(h):
                if k > n:
                    break
                total += c * math.comb(n - k + d - 1, d - 1)
            out.append(total)
        return out

    def __repr__(self) -> str:
        return f"RationalGF({[str(c) for c in self._num.coeffs]}, {self._dpow})"


def eulerian(d: int, k: int) -> int:
    """Eulerian number A(d, k) counting permutations of d letters by descents.

    Computed by the alternating binomial sum
    A(d, k) = sum_{j=0..k} (-1)^j C(d+1, j) (k-j)^d for d >= 1, with
    A(0, 0) = 1 and A(d, k) = 0 for k > d.
    """
    if not isinstance(d, int) or not isinstance(k, int) or d < 0 or k < 0:
        raise ValueError("eulerian arguments must be nonnegative integers")
    if k > d:
        return 0
    if d == 0:
        return 1
    return sum((-1) ** j * math.comb(d + 1, j) * (k - j) ** d for j in range(k + 1))


def cube_series(d: int) -> RationalGF:
    """Generating function of n -> (n+1)^d, the point count of the d-cube.

    Equal to (sum_{k=1..d} A(d, k) x^(k-1)) / (1-x)^(d+1); the d = 0 case
    is 1/(1-x).
    """
    if not isinstance(d, int) or d < 0:
        raise ValueError("cube dimension must be a nonnegative integer")
    if d == 0:
        return RationalGF(UniPoly([1]), 1)
    return RationalGF(UniPoly([eulerian(d, k) for k in range(1, d + 1)]), d + 1)


def gf_of_polynomial(g: UniPoly) -> RationalGF:
    """Generating function sum_n g(n) x^n of a polynomial sequence.

    Writes g in the basis 1, n, n^2, ... and assembles the series from
    cube series: the coefficient b_0 contributes b_0/(1-x) and each b_i
    with i >= 1 contributes b_i * x * (cube numerator)_i / (1-x)^(i+1),
    all over the common denominator (1-x)^(deg g + 1).
    """
    if not g:
        return RationalGF(UniPoly(), 0)
    r = g.degree
    omx = UniPoly([1, -1])
    num = UniPoly()
    for i, b in enumerate(g.coeffs):
        if b == 0:
            continue
        if i == 0:
            num = num + b * omx**r
        else:
            shifted = UniPoly.monomial(1) * cube_series(i).numerator
            num = num + b * shifted * omx ** (r - i)
    return RationalGF(num, r + 1)


def lagrange_interpolate(samples: Sequence[tuple[Rational, Rational]]) -> UniPoly:
    """Unique polynomial of degree < len(samples) through the given points.

    Exact rational Lagrange form; abscissae must be pairwise distinct.
    """
    pts = [(_exact(a, "abscissa"), _exact(y, "value")) for a, y in samples]
    if not pts:
        raise ValueError("at least one sample is required")
    if len({a for a, _ in pts}) != len(pts):
        raise ValueError("sample abscissae must be pairwise distinct")
    acc = UniPoly()
    for j, (xj, yj) in enumerate(pts):
        if yj == 0:
            continue
        basis = UniPoly([1])
        denom = Fraction(1)
        for k, (xk, _) in enumerate(pts):
            if k == j:
                continue
            basis = basis * UniPoly([-xk, 1])
            denom *= xj - xk
        acc = acc + (yj / denom) * basis
    return acc


def expand(series: RationalGF, count: int) -> list[Fraction]:
    """Power-series coefficients of ``series`` at orders 0..count."""
    return series.expand(count)


_TOKEN_RE = re.compile(r"t\d+|\d+|[-+*/^()]")


def _tokenize(text: str):
    tokens = []
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise WeightParseError(f"unexpected character {ch!r}", pos)
        tok = m.group()
        if tok[0] == "t":
            tokens.append(("var", tok, pos))
        elif tok[0].isdigit():
            tokens.append(("num", tok, pos))
        else:
            tokens.append(("op", tok, pos))
        pos = m.end()
    tokens.append(("end", "", length))
    return tokens


class _WeightParser:
    """Recursive-descent parser for weight expressions over t1..ts.

    Grammar (a strict superset of the documented surface syntax):

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := '-'* atom ('^' uint)?
        atom   := uint ('/' uint)? | 'txx' | '(' expr ')'

    The exponent binds tighter than a prefix sign, so -2^2 is -4.
    """

    def __init__(self, text: str, nvars: int):
        self._tokens = _tokenize(text)
        self._index = 0
        self._nvars = nvars

    def _peek(self):
        return self._tokens[self._index]

    def _take(self):
        tok = self._tokens[self._index]
        self._index += 1
        return tok

    def parse(self) -> WeightPoly:
        value = self._expr()
        kind, text, pos = self._peek()
        if kind != "end":
            raise WeightParseError(f"unexpected trailing input {text!r}", pos)
        return value

    def _expr(self) -> WeightPoly:
        sign = 1
        kind, text, _ = self._peek()
        if kind == "op" and text in "+-":
            self._take()
            if text == "-":
                sign = -1
        value = sign * self._term()
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text in "+-":
                self._take()
                rhs = self._term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def _term(self) -> WeightPoly:
        value = self._factor()
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text == "*":
                self._take()
                value = value * self._factor()
            else:
                return value

    def _factor(self) -> WeightPoly:
        sign = 1
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text == "-":
                self._take()
                sign = -sign
            else:
                break
        value = self._atom()
        kind, text, pos = self._peek()
        if kind == "op" and text == "^":
            self._take()
            kind, text, pos = self._peek()
            if kind != "num":
                raise WeightParseError("exponent must be a nonnegative integer", pos)
            self._take()
            exponent = int(text)
            if exponent > MAX_WEIGHT_EXPONENT:
                raise WeightParseError(
                    f"exponent {exponent} exceeds the cap {MAX_WEIGHT_EXPONENT}", pos
                )
            value = value**exponent
        return sign * value

    def _atom(self) -> WeightPoly:
        kind, text, pos = self._take()
        if kind == "num":
            numerator = int(text)
            nk, nt, npos = self._peek()
            if nk == "op" and nt == "/":
                self._take()
                dk, dt, dpos = self._peek()
                if dk != "num":
                    raise WeightParseError("expected an integer denominator", dpos)
                self._take()
                if int(dt) == 0:
                    raise WeightParseError("division by zero", dpos)
                return WeightPoly.constant(self._nvars, Fraction(numerator, int(dt)))
            return WeightPoly.constant(self._nvars, numerator)
        if kind == "var":
            index = int(text[1:])
            if not 1 <= index <= self._nvars:
                raise WeightParseError(
                    f"variable {text} out of range (expected t1..t{self._nvars})", pos
                )
            return WeightPoly.variable(index, self._nvars)
        if kind == "op" and text == "(":
            value = self._expr()
            kind, text, pos = self._peek()
            if not (kind == "op" and text == ")"):
                raise WeightParseError("expected ')'", pos)
            self._take()
            return value
        raise WeightParseError(
            "expected a number, a variable, or a parenthesized expression", pos
        )


def parse_weight(text: str, nvars: int) -> WeightPoly:
    """Parse a weight expression over variables t1..t(nvars).

    The syntax covers sums, differences, products, integer/rational
    constants like 2/5, and exponents, e.g. "t1^2*t2^2 - 1/3*(t1+1)".
    Raises :class:`WeightParseError` with the offending position.
    """
    if not isinstance(nvars, int) or nvars < 1:
        raise ValueError("nvars must be a positive integer")
    # normalize the unicode minus so pasted formulas survive
    return _WeightParser(text.replace("−", "-"), nvars).parse()


def eval_weight(w: WeightPoly, point: Sequence[Rational]) -> Fraction:
    """Exact value of the weight at a lattice (or rational) point."""
    return w.eval(point)


def format_polynomial(poly: UniPoly, var: str = "n", compact: bool = False) -> str:
    """Human-readable polynomial, highest power first.

    Spacing: "1/2*n^3 + n - 4" normally, "x^3+4*x^2+x" in compact mode.
    """
    if not poly:
        return "0"
    pieces = []
    for power in range(len(poly.coeffs) - 1, -1, -1):
        c = poly.coefficient(power)
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            stem = var if power == 1 else f"{var}^{power}"
            body = stem if mag == 1 else f"{mag}*{stem}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        elif compact:
            pieces.append(f"+{body}" if c > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(pieces)


def format_series(series: RationalGF, var: str = "x") -> str:
    """Render h(x)/(1-x)^D; the numerator keeps parentheses only when needed."""
    num = format_polynomial(series.numerator, var=var, compact=True)
    d = series.denom_power
    if d == 0:
        return num
    terms = sum(1 for c in series.numerator.coeffs if c != 0)
    if terms > 1:
        num = f"({num})"
    denom = f"(1-{var})" if d == 1 else f"(1-{var})^{d}"
    return f"{num}/{denom}"
