"""Exact arithmetic: small finite fields, the quadratic field Q(sqrt q), and
integer Laurent polynomials in one variable.

Field elements are stored as integers ``0 <= v < q`` encoding the coefficient
vector ``v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` of a polynomial in the
generator modulo a fixed irreducible.  The heavy code paths (augmentation
search, elimination) work on these integer codes through precomputed tables;
:class:`FqElem` is the user-facing wrapper.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_BOUND = 32

# Conway polynomials, low degree first (coefficients of 1, x, x^2, ...).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``, or raise :class:`FieldError`."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, k
    raise FieldError(f"{q} is not a prime power")  # pragma: no cover


class FiniteField:
    """The field F_q, q = p^k, with deterministic table-driven arithmetic."""

    def __init__(self, p: int, k: int = 1, bound: int = DEFAULT_BOUND):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        if p**k > bound:
            raise FieldError(f"q = {p}^{k} exceeds the bound {bound}")
        if k > 1 and (p, k) not in CONWAY:
            raise FieldError(f"no irreducible polynomial tabulated for {p}^{k}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = CONWAY.get((p, k), (0, 1))
        q = self.q
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.neg_table = [self.add_table[a].index(0) for a in range(q)]
        self.inv_table = [0] + [self.mul_table[a].index(1) for a in range(1, q)]
        self.one = 1
        self.zero = 0
        self.units = list(range(1, q))

    # coefficient vectors <-> integer codes
    def _vec(self, v: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _code(self, vec: Sequence[int]) -> int:
        v = 0
        for c in reversed(vec):
            v = v * self.p + c % self.p
        return v

    def _add(self, a: int, b: int) -> int:
        return self._code([x + y for x, y in zip(self._vec(a), self._vec(b))])

    def _mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        va, vb = self._vec(a), self._vec(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(va):
            for j, y in enumerate(vb):
                prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return self._code(prod[:k])

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    # integer-code arithmetic
    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return self.inv_table[a]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F_q."""
        return n % self.p

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        for _ in range(e):
            r = self.mul_table[r][a]
        return r

    def elements(self) -> list["FqElem"]:
        return [FqElem(self, v) for v in range(self.q)]

    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            return value
        if isinstance(value, int):
            return FqElem(self, self.from_int(value))
        return FqElem(self, self._code(value))

    def gen(self) -> "FqElem":
        """The class of x (equal to p mod p, i.e. 0, when k == 1)."""
        return FqElem(self, self.p % self.q if self.k > 1 else 0)

    # linear algebra
    def rank(self, rows: Iterable[Sequence[int]]) -> int:
        return len(self.row_reduce(rows)[1])

    def row_reduce(self, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
        m = [list(r) for r in rows]
        if not m:
            return [], []
        ncols = len(m[0])
        add, mul, neg, inv = self.add_table, self.mul_table, self.neg_table, self.inv_table
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            s = inv[m[r][c]]
            m[r] = [mul[s][x] for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = neg[m[i][c]]
                    row = m[r]
                    m[i] = [add[x][mul[f][y]] for x, y in zip(m[i], row)]
            pivots.append(c)
            r += 1
            if r == len(m):
                break
        return m[:r], pivots


@lru_cache(maxsize=None)
def fq_make(p: int, k: int = 1, bound: int = DEFAULT_BOUND) -> FiniteField:
    return FiniteField(p, k, bound)


def field_of_order(q: int, bound: int = DEFAULT_BOUND) -> FiniteField:
    p, k = prime_power(q)
    return fq_make(p, k, bound)


class FqElem:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FqElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FqElem(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FqElem(self.field, self._other(other)).inverse()

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.power(self.value, e))

    def inverse(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, (FqElem, int)):
            return self.value == self._other(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.value)
        coeffs = self.field._vec(self.value)
        terms = [
            (f"{c}" if i == 0 else ("" if c == 1 else f"{c}*") + ("x" if i == 1 else f"x^{i}"))
            for i, c in enumerate(coeffs)
            if c
        ]
        return " + ".join(reversed(terms)) or "0"


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class QSqrt:
    """An element a + b*sqrt(q) of Q(sqrt q), exact."""

    __slots__ = ("q", "a", "b")

    def __init__(self, q: int, a=0, b=0):
        if q < 1:
            raise ValueError("q must be positive")
        a, b = Fraction(a), Fraction(b)
        r = math.isqrt(q)
        if r * r == q:
            a, b = a + b * r, Fraction(0)
        self.q = q
        self.a = a
        self.b = b

    @classmethod
    def sqrt(cls, q: int) -> "QSqrt":
        return cls(q, 0, 1)

    def _coerce(self, other) -> "QSqrt":
        if isinstance(other, QSqrt):
            if other.q != self.q:
                raise ValueError(f"mixing Q(sqrt {self.q}) and Q(sqrt {other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt(self.q, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt(self.q, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(self.q, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt(self.q, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt(self.q, self.a * o.a + self.b * o.b * self.q, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.q

    def inverse(self) -> "QSqrt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in Q(sqrt q)")
        return QSqrt(self.q, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "QSqrt":
        base = self if e >= 0 else self.inverse()
        out = QSqrt(self.q, 1)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QSqrt(self.q, other)
        if not isinstance(other, QSqrt):
            return NotImplemented
        return (self.q, self.a, self.b) == (other.q, other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.q, self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def __str__(self) -> str:
        rad = f"sqrt({self.q})"
        if self.b == 0:
            return _frac_str(self.a)
        b = abs(self.b)
        bpart = rad if b == 1 else f"{_frac_str(b)}*{rad}"
        if self.a == 0:
            return bpart if self.b > 0 else "-" + bpart
        return f"{_frac_str(self.a)} {'+' if self.b > 0 else '-'} {bpart}"

    def __repr__(self) -> str:
        return f"QSqrt({self.q}, {self.a}, {self.b})"

    @classmethod
    def parse(cls, text: str, q: int) -> "QSqrt":
        """Inverse of ``str`` for a known base ``q``."""
        s = text.replace(" ", "")
        m = re.fullmatch(
            r"(?:(?P<a>-?\d+(?:/\d+)?)(?=[+-]|$))?(?:(?P<sign>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<q>\d+)\))?",
            s,
        )
        if not s or m is None:
            raise ValueError(f"cannot parse {text!r}")
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(0)
        if m.group("q"):
            if int(m.group("q")) != q:
                raise ValueError(f"{text!r} is not in Q(sqrt {q})")
            b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
            if m.group("sign") == "-":
                b = -b
        return cls(q, a, b)


def rational_power_of_sqrt(q: int, e: int) -> QSqrt:
    """q^(e/2) as an element of Q(sqrt q)."""
    half, odd = divmod(e, 2)
    base = QSqrt(q, Fraction(q) ** half)
    return base * QSqrt.sqrt(q) if odd else base


class LaurentPoly:
    """Integer Laurent polynomial in z, stored as {exponent: coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def evaluate(self, z: QSqrt) -> QSqrt:
        total = QSqrt(z.q, 0)
        for e, c in self.coeffs.items():
            total = total + c * z**e
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                mono = str(abs(c))
            else:
                zz = "z" if e == 1 else f"z^{e}"
                mono = zz if abs(c) == 1 else f"{abs(c)}*{zz}"
            if not parts:
                parts.append(("-" if c < 0 else "") + mono)
            else:
                parts.append(("- " if c < 0 else "+ ") + mono)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.coeffs})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        out: dict[int, int] = {}
        for m in re.finditer(r"([+-]?)(\d+)?(\*?z(?:\^(-?\d+))?)?", s):
            if not m.group(0):
                continue
            sign = -1 if m.group(1) == "-" else 1
            if m.group(3):
                c = int(m.group(2)) if m.group(2) else 1
                e = int(m.group(4)) if m.group(4) else 1
            else:
                c, e = int(m.group(2)), 0
            out[e] = out.get(e, 0) + sign * c
        return cls(out)


def z_value(q: int) -> QSqrt:
    """q^(1/2) - q^(-1/2) in Q(sqrt q)."""
    return QSqrt(q, 0, Fraction(q - 1, q))


def qsqrt_eval_laurent(poly: LaurentPoly, q: int) -> QSqrt:
    """Evaluate ``poly`` at z = q^(1/2) - q^(-1/2), exactly."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return poly.evaluate(z_value(q))
