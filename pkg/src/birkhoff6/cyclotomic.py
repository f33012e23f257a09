"""Exact arithmetic in the 12th cyclotomic field Q(z), z = exp(i*pi/6).

Elements are stored as c0 + c1*z + c2*z^2 + c3*z^3 reduced modulo the
minimal polynomial z^4 - z^2 + 1.  Internally the four coefficients share
one positive denominator, which keeps multiplication on plain integers.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction, "CycNum"]

_XI = complex(math.sqrt(3) / 2, 0.5)
_XI_POWERS = (1 + 0j, _XI, _XI * _XI, 1j)


class CycNum:
    """Immutable element of Q(z).

    Equality is exact coefficient comparison; the representation is kept
    canonical after every operation.

    >>> xi_pow(3) * xi_pow(3) == -1
    True
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, c0: int | Fraction = 0, c1: int | Fraction = 0,
                 c2: int | Fraction = 0, c3: int | Fraction = 0) -> None:
        cs = [Fraction(c) for c in (c0, c1, c2, c3)]
        d = math.lcm(*(c.denominator for c in cs))
        self._set(tuple(c.numerator * (d // c.denominator) for c in cs), d)

    def _set(self, n: tuple[int, int, int, int], d: int) -> None:
        g = math.gcd(*n, d)
        if g != 1:
            n = (n[0] // g, n[1] // g, n[2] // g, n[3] // g)
            d //= g
        self._n = n
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, n: tuple[int, int, int, int], d: int) -> CycNum:
        obj = object.__new__(cls)
        if d < 0:
            n, d = (-n[0], -n[1], -n[2], -n[3]), -d
        obj._set(n, d)
        return obj

    @classmethod
    def coerce(cls, value: Number) -> CycNum:
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Fraction)):
            f = Fraction(value)
            return cls._raw((f.numerator, 0, 0, 0), f.denominator)
        raise TypeError(f"cannot convert {type(value).__name__} to CycNum")

    # -- accessors ---------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(c, self._d) for c in self._n)  # type: ignore[return-value]

    @property
    def c0(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def c1(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def c2(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def c3(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    def is_zero(self) -> bool:
        return self._n == (0, 0, 0, 0)

    def is_rational(self) -> bool:
        return self._n[1:] == (0, 0, 0)

    def height(self) -> int:
        """Largest absolute numerator or denominator of the coefficients."""
        return max(max(abs(f.numerator), f.denominator) for f in self.coefficients)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Number) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, d, b, e = self._n, self._d, o._n, o._d
        if d == e:
            return CycNum._raw(tuple(x + y for x, y in zip(a, b)), d)  # type: ignore[arg-type]
        return CycNum._raw(tuple(x * e + y * d for x, y in zip(a, b)), d * e)  # type: ignore[arg-type]

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        n = self._n
        return CycNum._raw((-n[0], -n[1], -n[2], -n[3]), self._d)

    def __sub__(self, other: Number) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Number) -> CycNum:
        return CycNum.coerce(other) - self

    def __mul__(self, other: Number) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = o._n
        p0 = a0 * b0
        p1 = a0 * b1 + a1 * b0
        p2 = a0 * b2 + a1 * b1 + a2 * b0
        p3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        p4 = a1 * b3 + a2 * b2 + a3 * b1
        p5 = a2 * b3 + a3 * b2
        p6 = a3 * b3
        # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return CycNum._raw((p0 - p4 - p6, p1 - p5, p2 + p4, p3 + p5),
                           self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        """Multiplicative inverse by solving the 4x4 rational system a*x = 1."""
        return _cached_inverse(self)

    def _solve_inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(z)")
        # column j holds the coefficients of self * z^j
        cols = []
        t = self
        for _ in range(4):
            cols.append(t.coefficients)
            t = t * XI
        m = [[cols[j][i] for j in range(4)] + [Fraction(int(i == 0))] for i in range(4)]
        for c in range(4):
            piv = next(r for r in range(c, 4) if m[r][c] != 0)
            m[c], m[piv] = m[piv], m[c]
            pv = m[c][c]
            m[c] = [v / pv for v in m[c]]
            for r in range(4):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return CycNum(*(m[i][4] for i in range(4)))

    def __truediv__(self, other: Number) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_rational():
            if o._n[0] == 0:
                raise ZeroDivisionError("division by zero in Q(z)")
            return self * CycNum._raw((o._d, 0, 0, 0), o._n[0])
        return self * o.inverse()

    def __rtruediv__(self, other: Number) -> CycNum:
        return CycNum.coerce(other) / self

    def __pow__(self, e: int) -> CycNum:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> CycNum:
        """Complex conjugate, z -> z^11."""
        return sum((c * xi_pow(-j) for j, c in enumerate(self.coefficients)), ZERO)

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNum):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == CycNum.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            n = self._n
            # rationals hash like the equal int/Fraction
            self._hash = (hash(Fraction(n[0], self._d)) if n[1] == n[2] == n[3] == 0
                          else hash((n, self._d)))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return cyc_embed(self)

    def __repr__(self) -> str:
        return f"CycNum({format_cyc(self)!r})"

    def __str__(self) -> str:
        return format_cyc(self)

    def __reduce__(self):
        return (CycNum, self.coefficients)


@functools.lru_cache(maxsize=1 << 16)
def _cached_inverse(a: CycNum) -> CycNum:
    return a._solve_inverse()


ZERO = CycNum._raw((0, 0, 0, 0), 1)
ONE = CycNum._raw((1, 0, 0, 0), 1)
XI = CycNum._raw((0, 1, 0, 0), 1)

_POW_TABLE: list[CycNum] = [ONE]
for _ in range(11):
    _POW_TABLE.append(_POW_TABLE[-1] * XI)
del _


def xi_pow(e: int) -> CycNum:
    """Return z**(e mod 12); z is the primitive 12th root sqrt(3)/2 + i/2."""
    return _POW_TABLE[e % 12]


I = xi_pow(3)
SQRT3 = XI + xi_pow(11)


def cyc_mul(a: Number, b: Number) -> CycNum:
    return CycNum.coerce(a) * CycNum.coerce(b)


def cyc_inv(a: Number) -> CycNum:
    return CycNum.coerce(a).inverse()


def cyc_is_zero(a: Number) -> bool:
    return CycNum.coerce(a).is_zero()


def cyc_embed(a: Number) -> complex:
    """Double precision value of ``a`` under z -> sqrt(3)/2 + i/2."""
    a = CycNum.coerce(a)
    return sum((float(c) * p for c, p in zip(a.coefficients, _XI_POWERS)), 0j)


def cyc_sum(values: Iterable[Number]) -> CycNum:
    total = ZERO
    for v in values:
        total = total + v
    return total


# -- textual literals -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^])|(?P<z>z)|(?P<bad>\S))")


class CycLiteralError(ValueError):
    """Malformed CycNum literal; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.end() == pos:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise CycLiteralError(f"unexpected character {m.group(kind)!r}", text, start)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    return tokens


def parse_cyc(text: str) -> CycNum:
    """Parse ``"c0 + c1*z + c2*z^2 + c3*z^3"``; any power ``z^k`` is accepted.

    >>> parse_cyc("-3/2 + z^3")
    CycNum('-3/2 + z^3')
    """
    if not isinstance(text, str):
        raise CycLiteralError(f"expected a string literal, got {type(text).__name__}", str(text), 0)
    tokens = _tokenize(text)
    if not tokens:
        raise CycLiteralError("empty literal", text, 0)
    idx = 0
    total = ZERO

    def peek() -> tuple[str, str, int] | None:
        return tokens[idx] if idx < len(tokens) else None

    first = True
    while idx < len(tokens):
        sign = 1
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            idx += 1
        elif not first:
            raise CycLiteralError("expected '+' or '-'", text, tok[2])
        first = False
        tok = peek()
        if tok is None:
            raise CycLiteralError("dangling sign", text, len(text))
        coeff = Fraction(1)
        power = 0
        if tok[0] == "num":
            num, _, den = tok[1].partition("/")
            if den and int(den) == 0:
                raise CycLiteralError("zero denominator", text, tok[2])
            coeff = Fraction(int(num), int(den) if den else 1)
            idx += 1
            tok = peek()
            if tok is not None and tok[0] == "op" and tok[1] == "*":
                idx += 1
                tok = peek()
                if tok is None or tok[0] != "z":
                    raise CycLiteralError("expected 'z' after '*'", text,
                                          tok[2] if tok else len(text))
            elif tok is None or tok[0] != "z":
                total = total + sign * coeff
                continue
        if tok[0] != "z":
            raise CycLiteralError(f"unexpected token {tok[1]!r}", text, tok[2])
        idx += 1
        power = 1
        tok = peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            idx += 1
            tok = peek()
            exp_sign = 1
            if tok is not None and tok[0] == "op" and tok[1] == "-":
                exp_sign = -1
                idx += 1
                tok = peek()
            if tok is None or tok[0] != "num" or "/" in tok[1]:
                raise CycLiteralError("expected integer exponent", text,
                                      tok[2] if tok else len(text))
            power = exp_sign * int(tok[1])
            idx += 1
        total = total + xi_pow(power) * (sign * coeff)
    return total


def _format_rational(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_cyc(a: Number) -> str:
    """Canonical literal; round-trips through :func:`parse_cyc`."""
    a = CycNum.coerce(a)
    parts: list[str] = []
    for j, c in enumerate(a.coefficients):
        if c == 0:
            continue
        mag = abs(c)
        zs = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
        if not zs:
            body = _format_rational(mag)
        elif mag == 1:
            body = zs
        else:
            body = f"{_format_rational(mag)}*{zs}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"


def complex_close(a: complex, b: complex, rel: float = 1e-9) -> bool:
    """Mixed tolerance: relative to the larger magnitude, absolute near zero."""
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))
