"""Exact arithmetic for real quadratic irrationals.

Values (a + b*sqrt(D))/c are kept in a canonical form (D squarefree, gcd(a,b,c)=1,
c > 0, b != 0) so that equality of values is field-by-field equality.  Every
algorithm in this module runs on unbounded integers; no floating point is used
anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .errors import (
    FieldMismatchError,
    InvariantError,
    ParseError,
    RationalValueError,
)

__all__ = [
    "QuadraticIrrational",
    "ContinuedFraction",
    "QuadraticInteger",
    "parse_theta",
    "cf_expand",
    "cf_value",
    "fundamental_unit",
    "kronecker",
    "gl2z_equivalent",
    "squarefree_decompose",
]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 1 as s**2 * r with r squarefree; return (s, r)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    s, r, m = 1, 1, n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * m


def _is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_decompose(n)[0] == 1


@dataclass(frozen=True)
class QuadraticIrrational:
    """The real quadratic irrational (a + b*sqrt(D))/c in canonical form.

    Canonical means: D squarefree and > 1, c > 0, b != 0, gcd(a, b, c) = 1.
    Instances are immutable; two instances are equal exactly when they denote
    the same real number.
    """

    a: int
    b: int
    c: int
    D: int

    def __post_init__(self):
        if self.D <= 1 or not _is_squarefree(self.D):
            raise ValueError(f"D must be squarefree and > 1, got {self.D}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.b == 0:
            raise RationalValueError("b = 0 makes the value rational")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"({self.a}, {self.b}, {self.c}) is not gcd-reduced")

    @classmethod
    def canonical(cls, a: int, b: int, c: int, radicand: int) -> "QuadraticIrrational":
        """Canonicalize (a + b*sqrt(radicand))/c.

        Square factors of the radicand are absorbed into b, the sign of c is
        fixed positive and the triple is gcd-reduced.  Raises
        RationalValueError if the value is rational (radicand a perfect square,
        or b = 0).
        """
        if c == 0:
            raise ValueError("denominator c must be nonzero")
        if radicand < 0:
            raise ValueError(f"radicand must be nonnegative, got {radicand}")
        if radicand == 0:
            raise RationalValueError("sqrt(0) is rational")
        s, d = squarefree_decompose(radicand)
        if d == 1:
            raise RationalValueError(
                f"{radicand} is a perfect square, the value is rational"
            )
        b = b * s
        if b == 0:
            raise RationalValueError("zero radical coefficient, the value is rational")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        return cls(a // g, b // g, c // g, d)

    def conjugate(self) -> "QuadraticIrrational":
        return QuadraticIrrational(self.a, -self.b, self.c, self.D)

    def minimal_polynomial(self) -> tuple[int, int, int]:
        """Primitive integral minimal polynomial A*x^2 + B*x + C with A > 0."""
        A = self.c * self.c
        B = -2 * self.a * self.c
        C = self.a * self.a - self.b * self.b * self.D
        g = gcd(gcd(A, B), C)
        return A // g, B // g, C // g

    def discriminant(self) -> int:
        """Discriminant of the minimal polynomial (equals f**2 * d_K)."""
        A, B, C = self.minimal_polynomial()
        return B * B - 4 * A * C

    def mobius(self, p: int, q: int, r: int, s: int) -> "QuadraticIrrational":
        """Apply the fractional-linear map x -> (p*x + q)/(r*x + s) exactly."""
        a, b, c = self.a, self.b, self.c
        # numerator (pa+qc) + pb*sqrt(D), denominator (ra+sc) + rb*sqrt(D)
        u, v = p * a + q * c, p * b
        w, z = r * a + s * c, r * b
        e = w * w - z * z * self.D
        if e == 0:
            raise ValueError("map sends the value to infinity (zero denominator)")
        a2 = u * w - v * z * self.D
        b2 = v * w - u * z
        if b2 == 0:
            raise RationalValueError("degenerate map produced a rational value")
        return QuadraticIrrational.canonical(a2, b2, e, self.D)

    def __str__(self) -> str:
        if self.b == 1:
            rad = f"sqrt({self.D})"
        elif self.b == -1:
            rad = f"-sqrt({self.D})"
        else:
            rad = f"{self.b}*sqrt({self.D})"
        if self.a == 0:
            body = rad
        elif self.b < 0:
            body = f"{self.a}-{rad[1:]}"
        else:
            body = f"{self.a}+{rad}"
        if self.c == 1:
            return body
        return f"({body})/{self.c}"


@dataclass(frozen=True)
class ContinuedFraction:
    """Eventually periodic continued fraction with minimal preperiod and period.

    The first preperiod quotient may be any integer; all later quotients are
    >= 1.  The period is nonempty.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(x) for x in self.preperiod))
        object.__setattr__(self, "period", tuple(int(x) for x in self.period))
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(x < 1 for x in self.period):
            raise ValueError(f"period quotients must be >= 1, got {self.period}")
        if any(x < 1 for x in self.preperiod[1:]):
            raise ValueError(
                f"preperiod quotients after the first must be >= 1, got {self.preperiod}"
            )
        k = len(self.period)
        for d in range(1, k):
            if k % d == 0 and self.period == self.period[:d] * (k // d):
                raise ValueError(f"period {self.period} is a repetition of a shorter block")
        if self.preperiod and self.preperiod[-1] == self.period[-1]:
            raise ValueError(
                "preperiod is not minimal: its last quotient can be rotated into the period"
            )

    def quotients(self, n: int):
        """Yield the first n partial quotients of the infinite expansion."""
        for i in range(n):
            if i < len(self.preperiod):
                yield self.preperiod[i]
            else:
                yield self.period[(i - len(self.preperiod)) % len(self.period)]

    def __str__(self) -> str:
        return f"preperiod={list(self.preperiod)} period={list(self.period)}"


@dataclass(frozen=True)
class QuadraticInteger:
    """Element x + y*omega of the ring of integers of Q(sqrt(D)).

    omega is sqrt(D) for D = 2, 3 (mod 4) and (1 + sqrt(D))/2 for D = 1 (mod 4).
    """

    x: int
    y: int
    D: int

    def __post_init__(self):
        if self.D <= 1 or not _is_squarefree(self.D):
            raise ValueError(f"D must be squarefree and > 1, got {self.D}")

    @property
    def omega_trace(self) -> int:
        """Trace of omega: 1 for D = 1 (mod 4), else 0."""
        return 1 if self.D % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        """Norm of omega: (1 - D)/4 for D = 1 (mod 4), else -D."""
        return (1 - self.D) // 4 if self.D % 4 == 1 else -self.D

    def norm(self) -> int:
        t, n = self.omega_trace, self.omega_norm
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.omega_trace * self.y

    def __mul__(self, other: "QuadraticInteger") -> "QuadraticInteger":
        if self.D != other.D:
            raise FieldMismatchError(f"cannot multiply D={self.D} by D={other.D}")
        t, n = self.omega_trace, self.omega_norm
        # omega**2 = t*omega - n
        x = self.x * other.x - n * self.y * other.y
        y = self.x * other.y + self.y * other.x + t * self.y * other.y
        return QuadraticInteger(x, y, self.D)

    def __pow__(self, e: int) -> "QuadraticInteger":
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QuadraticInteger(1, 0, self.D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_irrational(self) -> QuadraticIrrational:
        """The value x + y*omega as a QuadraticIrrational (requires y != 0)."""
        if self.D % 4 == 1:
            return QuadraticIrrational.canonical(2 * self.x + self.y, self.y, 2, self.D)
        return QuadraticIrrational.canonical(self.x, self.y, 1, self.D)

    def exceeds_one(self) -> bool:
        """Exact test for x + y*omega > 1."""
        # reduce to the sign of p + q*sqrt(D)
        if self.D % 4 == 1:
            p, q = 2 * (self.x - 1) + self.y, self.y
        else:
            p, q = self.x - 1, self.y
        return _radical_sign(p, q, self.D) > 0

    def __str__(self) -> str:
        omega = f"(1+sqrt({self.D}))/2" if self.D % 4 == 1 else f"sqrt({self.D})"
        return f"{self.x} + {self.y}*{omega}"


def _radical_sign(p: int, q: int, D: int) -> int:
    """Sign of p + q*sqrt(D), computed exactly."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    t = p * p - q * q * D
    if p > 0:  # q < 0: compare p against |q|*sqrt(D)
        return (t > 0) - (t < 0)
    return (t < 0) - (t > 0)


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------


def cf_expand(theta: QuadraticIrrational) -> ContinuedFraction:
    """Expand theta into its periodic continued fraction.

    The expansion runs the integer recurrence on states (P, Q) with
    theta_n = (P_n + sqrt(N))/Q_n, N fixed.  The state determines the whole
    tail, so the first repeated state marks both the minimal preperiod and the
    minimal period.
    """
    if theta.b > 0:
        P, Q = theta.a, theta.c
    else:
        P, Q = -theta.a, -theta.c
    N = theta.b * theta.b * theta.D
    if (N - P * P) % Q:
        t = abs(Q)
        P, Q, N = P * t, Q * t, N * t * t
    s = isqrt(N)
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quotients)
        if Q > 0:
            a = (P + s) // Q
        else:
            a = (-P - s - 1) // (-Q)
        quotients.append(a)
        P = a * Q - P
        Q2, rem = divmod(N - P * P, Q)
        if rem:
            raise InvariantError("continued-fraction state recurrence lost exactness")
        Q = Q2
    start = seen[(P, Q)]
    return ContinuedFraction(tuple(quotients[:start]), tuple(quotients[start:]))


def _convergent_matrix(quotients) -> tuple[int, int, int, int]:
    """Product of [[a, 1], [1, 0]] over the quotients, as (p, p', q, q')."""
    p, p1, q, q1 = 1, 0, 0, 1
    for a in quotients:
        p, p1 = a * p + p1, p
        q, q1 = a * q + q1, q
    return p, p1, q, q1


def cf_value(cf: ContinuedFraction) -> QuadraticIrrational:
    """The exact quadratic irrational whose expansion is cf.

    Inverse of cf_expand: the purely periodic tail y solves the fixed-point
    quadratic of the period matrix, and the preperiod acts on y as a
    fractional-linear map.
    """
    pk, pk1, qk, qk1 = _convergent_matrix(cf.period)
    # y = (pk*y + pk1)/(qk*y + qk1)  =>  qk*y^2 + (qk1 - pk)*y - pk1 = 0.
    # The matrix coefficients are a huge multiple of the primitive minimal
    # polynomial (the content is the automorph coordinate), so primitivize
    # before touching the discriminant.
    g = gcd(gcd(qk, qk1 - pk), pk1)
    A, B = qk // g, (qk1 - pk) // g
    C = -(pk1 // g)
    disc = B * B - 4 * A * C
    if disc <= 0 or isqrt(disc) ** 2 == disc:
        raise RationalValueError(
            f"period {cf.period} has a rational fixed point (discriminant {disc})"
        )
    y = QuadraticIrrational.canonical(-B, 1, 2 * A, disc)
    if not cf.preperiod:
        return y
    p, p1, q, q1 = _convergent_matrix(cf.preperiod)
    return y.mobius(p, p1, q, q1)


def gl2z_equivalent(t1: QuadraticIrrational, t2: QuadraticIrrational) -> bool:
    """Whether t1 = (p*t2 + q)/(r*t2 + s) for some integer matrix with det +-1.

    Decided through the continued fractions: the two values are equivalent
    exactly when their expansions share a tail, i.e. when the minimal periods
    are cyclic rotations of each other.
    """
    if t1.D != t2.D:
        raise FieldMismatchError(
            f"values live in different fields Q(sqrt({t1.D})) and Q(sqrt({t2.D}))"
        )
    per1 = cf_expand(t1).period
    per2 = cf_expand(t2).period
    if len(per1) != len(per2):
        return False
    k = len(per2)
    return any(per2[i:] + per2[:i] == per1 for i in range(k))


# ---------------------------------------------------------------------------
# fundamental units
# ---------------------------------------------------------------------------


def _omega(D: int) -> QuadraticIrrational:
    if D % 4 == 1:
        return QuadraticIrrational(1, 1, 2, D)
    return QuadraticIrrational(0, 1, 1, D)


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> tuple[QuadraticInteger, int]:
    """Smallest unit epsilon > 1 of the ring of integers of Q(sqrt(D)).

    Returns (epsilon, norm) with norm in {+1, -1}.  Candidates are scanned
    along the convergents p/q of omega; every unit exceeding 1 appears as
    p - q*conj(omega), so the first candidate of norm +-1 is the fundamental
    unit.
    """
    if D <= 1 or not _is_squarefree(D):
        raise ValueError(f"D must be squarefree and > 1, got {D}")
    omega = _omega(D)
    cf = cf_expand(omega)
    t = 1 if D % 4 == 1 else 0
    limit = len(cf.preperiod) + 2 * len(cf.period) + 4
    p, p1, q, q1 = 1, 0, 0, 1
    for a in cf.quotients(limit):
        p, p1 = a * p + p1, p
        q, q1 = a * q + q1, q
        unit = QuadraticInteger(p - t * q, q, D)
        norm = unit.norm()
        if norm in (1, -1):
            if not unit.exceeds_one():
                raise InvariantError(f"unit candidate for D={D} does not exceed 1")
            return unit, norm
    raise InvariantError(f"no unit found within {limit} convergents for D={D}")


# ---------------------------------------------------------------------------
# Kronecker symbol
# ---------------------------------------------------------------------------


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n); restricts to Jacobi/Legendre for odd n > 0.

    >>> kronecker(5, 11)
    1
    >>> kronecker(5, 2)
    -1
    >>> kronecker(10, 5)
    0
    """
    if n == 0:
        raise ValueError("Kronecker symbol needs n != 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(sqrt)|([+\-*/()])|(\S))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("sqrt", "sqrt", m.start(2)))
        elif m.group(3) is not None:
            tokens.append((m.group(3), m.group(3), m.start(3)))
        else:
            raise ParseError(f"unexpected character {m.group(4)!r}", m.start(4))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for theta expressions.

    Grammar (whitespace-insensitive between tokens):

        expr     := "(" sum ")" "/" posint | sum
        sum      := signedint (("+" | "-") radical)? | sign? radical
        radical  := (posint "*"?)? "sqrt" "(" posint ")"
        signedint:= sign? posint
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def next(self) -> tuple[str, object, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, object, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        return tok

    def parse(self) -> tuple[int, int, int, int]:
        """Return (a, b, c, radicand) for (a + b*sqrt(radicand))/c, unreduced."""
        if self.peek() == "(":
            self.next()
            a, b, rad = self.parse_sum()
            self.expect(")")
            self.expect("/")
            tok = self.expect("int")
            c = tok[1]
            if c == 0:
                raise ParseError("denominator must be nonzero", tok[2])
        else:
            a, b, rad = self.parse_sum()
            c = 1
        self.expect("end")
        return a, b, c, rad

    def parse_sum(self) -> tuple[int, int, int]:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        if self.peek() == "sqrt":
            b, rad = self.parse_radical(1)
            return 0, sign * b, rad
        tok = self.expect("int")
        value = sign * tok[1]
        if self.peek() in ("*", "sqrt"):
            # the integer was a radical coefficient, as in 2*sqrt(3)
            b, rad = self.parse_radical(tok[1])
            return 0, sign * b, rad
        if self.peek() in ("+", "-"):
            op = self.next()[0]
            coeff = 1
            if self.peek() == "int":
                coeff = self.expect("int")[1]
            b, rad = self.parse_radical(coeff)
            return value, b if op == "+" else -b, rad
        return value, 0, 0

    def parse_radical(self, coeff: int) -> tuple[int, int]:
        if self.peek() == "*":
            self.next()
        self.expect("sqrt")
        self.expect("(")
        rad_tok = self.expect("int")
        self.expect(")")
        if rad_tok[1] < 2:
            raise ParseError(f"radicand must be >= 2, got {rad_tok[1]}", rad_tok[2])
        return coeff, rad_tok[1]


def parse_theta(text: str) -> QuadraticIrrational:
    """Parse an expression like ``(1+sqrt(5))/2`` into canonical form.

    Accepted shapes: ``sqrt(D)``, ``B*sqrt(D)``, ``A+B*sqrt(D)``,
    ``A-B*sqrt(D)`` and any of these wrapped as ``( ... )/C``.  Square factors
    of the radicand are absorbed into the coefficient; rational values are
    rejected.
    """
    parser = _Parser(text)
    a, b, c, rad = parser.parse()
    if b == 0:
        raise RationalValueError(f"{text!r} denotes a rational number")
    return QuadraticIrrational.canonical(a, b, c, rad)
