"""Exact arithmetic in Q(sqrt D) and the orders O_D, O_{D/4}.

A :class:`QuadNum` is stored as ``(a + b*sqrt(D)) / c`` with integers
``a, b, c`` reduced so that ``c > 0`` and ``gcd(a, b, c) == 1``.  The
radicand need not be square-free, and perfect squares are allowed: for
``D = d*d`` the value stays symbolic in storage and only collapses to
``a + b*d`` inside equality, hashing and sign tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import DivisionByZero, MixedRadicand, PrymError

Rational = int | Fraction


@lru_cache(maxsize=None)
def square_root(D: int) -> int | None:
    """Integer square root of ``D`` when ``D`` is a perfect square."""
    r = isqrt(D)
    return r if r * r == D else None


def _sign_int(n: int) -> int:
    return (n > 0) - (n < 0)


class QuadNum:
    """The number ``p + q*sqrt(D)`` with rational ``p`` and ``q``."""

    __slots__ = ("_a", "_b", "_c", "d_param")

    def __init__(self, p: Rational = 0, q: Rational = 0, D: int = 1):
        if D <= 0:
            raise PrymError(f"radicand must be positive, got {D}")
        p = Fraction(p)
        q = Fraction(q)
        den = p.denominator * q.denominator // gcd(p.denominator, q.denominator)
        self._set(p.numerator * (den // p.denominator),
                  q.numerator * (den // q.denominator), den, D)

    def _set(self, a: int, b: int, c: int, D: int) -> None:
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(a, b, c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        self._a = a
        self._b = b
        self._c = c
        self.d_param = D

    @classmethod
    def _raw(cls, a: int, b: int, c: int, D: int) -> QuadNum:
        x = cls.__new__(cls)
        x._set(a, b, c, D)
        return x

    @classmethod
    def sqrt(cls, D: int) -> QuadNum:
        return cls._raw(0, 1, 1, D)

    # -- accessors -----------------------------------------------------

    @property
    def p(self) -> Fraction:
        return Fraction(self._a, self._c)

    @property
    def q(self) -> Fraction:
        return Fraction(self._b, self._c)

    def parts(self) -> tuple[int, int, int]:
        """The reduced integer triple ``(a, b, c)``."""
        return self._a, self._b, self._c

    def value(self) -> Fraction:
        """Exact rational value; only defined when the number is rational."""
        r = square_root(self.d_param)
        if r is not None:
            return Fraction(self._a + self._b * r, self._c)
        if self._b:
            raise PrymError(f"{self!r} is irrational")
        return Fraction(self._a, self._c)

    def is_rational(self) -> bool:
        return self._b == 0 or square_root(self.d_param) is not None

    def __float__(self) -> float:
        return (self._a + self._b * self.d_param ** 0.5) / self._c

    # -- coercion ------------------------------------------------------

    def _coerce(self, other) -> QuadNum | None:
        if isinstance(other, QuadNum):
            if other.d_param != self.d_param:
                raise MixedRadicand(f"sqrt({self.d_param}) vs sqrt({other.d_param})")
            return other
        if isinstance(other, int):
            return QuadNum._raw(other, 0, 1, self.d_param)
        if isinstance(other, Fraction):
            return QuadNum._raw(other.numerator, 0, other.denominator, self.d_param)
        return None

    # -- field operations ----------------------------------------------

    def __add__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if self._c == y._c:
            return QuadNum._raw(self._a + y._a, self._b + y._b, self._c, self.d_param)
        return QuadNum._raw(self._a * y._c + y._a * self._c,
                            self._b * y._c + y._b * self._c,
                            self._c * y._c, self.d_param)

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum._raw(-self._a, -self._b, self._c, self.d_param)

    def __pos__(self) -> QuadNum:
        return self

    def __sub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        a1, b1, c1 = self._a, self._b, self._c
        a2, b2, c2 = y._a, y._b, y._c
        return QuadNum._raw(a1 * a2 + b1 * b2 * self.d_param,
                            a1 * b2 + a2 * b1, c1 * c2, self.d_param)

    __rmul__ = __mul__

    def conj(self) -> QuadNum:
        return QuadNum._raw(self._a, -self._b, self._c, self.d_param)

    def norm(self) -> Fraction:
        """Field norm ``p^2 - q^2 D``."""
        return Fraction(self._a * self._a - self._b * self._b * self.d_param,
                        self._c * self._c)

    def trace(self) -> Fraction:
        return Fraction(2 * self._a, self._c)

    def inverse(self) -> QuadNum:
        if not self:
            raise DivisionByZero("division by zero in Q(sqrt D)")
        r = square_root(self.d_param)
        if r is not None:
            # the symbolic norm can vanish here, so divide by the collapsed value
            v = self._a + self._b * r
            return QuadNum._raw(self._c, 0, v, self.d_param)
        n = self._a * self._a - self._b * self._b * self.d_param
        return QuadNum._raw(self._a * self._c, -self._b * self._c, n, self.d_param)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, n: int) -> QuadNum:
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadNum._raw(1, 0, 1, self.d_param)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- sign and order ------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the value: -1, 0 or 1."""
        a, b = self._a, self._b
        r = square_root(self.d_param)
        if r is not None:
            return _sign_int(a + b * r)
        sa, sb = _sign_int(a), _sign_int(b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        return sa * _sign_int(a * a - b * b * self.d_param)

    def __bool__(self) -> bool:
        return self.sign() != 0

    def _cmp(self, other) -> int | None:
        y = self._coerce(other)
        if y is None:
            return None
        return (self - y).sign()

    def __lt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __eq__(self, other):
        if isinstance(other, QuadNum):
            if other.d_param != self.d_param:
                return False
            if square_root(self.d_param) is None:
                return (self._a, self._b, self._c) == (other._a, other._b, other._c)
            return self.value() == other.value()
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.value())
        return hash((self._a, self._b, self._c, self.d_param))

    def __abs__(self) -> QuadNum:
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Exact floor of the value."""
        n = int(float(self)) - 2
        while self >= n + 1:
            n += 1
        return n

    def __repr__(self) -> str:
        return f"QuadNum({self.p}, {self.q}, D={self.d_param})"

    def __str__(self) -> str:
        if self._b == 0 or self.is_rational():
            return str(self.value())
        p, q = self.p, self.q
        qs = "" if abs(q) == 1 else f"{abs(q)}*"
        rad = f"{qs}sqrt({self.d_param})"
        if p == 0:
            return rad if q > 0 else f"-{rad}"
        return f"{p} {'+' if q > 0 else '-'} {rad}"


def qn(x: Rational | QuadNum, D: int) -> QuadNum:
    """Lift an int, Fraction or QuadNum into Q(sqrt D)."""
    if isinstance(x, QuadNum):
        if x.d_param != D:
            raise MixedRadicand(f"sqrt({x.d_param}) vs sqrt({D})")
        return x
    return QuadNum(x, 0, D)


def qnum_arith(x: QuadNum, y: QuadNum | None, op: str) -> QuadNum:
    """Dispatch one of add, sub, mul, div, neg, conj."""
    if op == "neg":
        return -x
    if op == "conj":
        return x.conj()
    if y is None:
        raise PrymError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise PrymError(f"unknown operation {op!r}")


def qnum_sign(x: QuadNum) -> str:
    return {-1: "negative", 0: "zero", 1: "positive"}[x.sign()]


def lam(D: int, e: int) -> QuadNum:
    """lambda = (e + sqrt D)/2."""
    return QuadNum(Fraction(e, 2), Fraction(1, 2), D)


def canonical_d(D: int) -> int:
    """Smallest nonnegative even d with d^2 = D mod 16."""
    for d in range(0, 16, 2):
        if (d * d - D) % 16 == 0:
            return d
    raise PrymError(f"{D} is not an even quadratic residue mod 16")


def rho(D: int, d: int | None = None) -> QuadNum:
    """rho = (sqrt D - d)/2 with the canonical d unless one is given."""
    if d is None:
        d = canonical_d(D)
    return QuadNum(Fraction(-d, 2), Fraction(1, 2), D)


class OrderBasis:
    """The Z-basis {1, g} of an order, with g of discriminant D or D/4."""

    __slots__ = ("d_param", "generator", "half_flag")

    def __init__(self, D: int, generator: QuadNum, half_flag: bool = False):
        if generator.d_param != D:
            raise MixedRadicand("generator lives in a different field")
        p, q = generator.p, generator.q
        # minimal polynomial x^2 - 2p x + (p^2 - q^2 D)
        lin, const = -2 * p, p * p - q * q * D
        if lin.denominator != 1 or const.denominator != 1:
            raise PrymError(f"{generator} is not an algebraic integer")
        disc = lin * lin - 4 * const
        target = Fraction(D, 4) if half_flag else Fraction(D)
        if disc != target:
            raise PrymError(f"generator has discriminant {disc}, expected {target}")
        self.d_param = D
        self.generator = generator
        self.half_flag = half_flag

    @classmethod
    def rho_basis(cls, D: int, half: bool = False, d: int | None = None) -> OrderBasis:
        """{1, rho} for O_D, or {1, rho/2} for O_{D/4} when ``half``."""
        r = rho(D, d)
        return cls(D, r / 2 if half else r, half)

    def coordinates(self, x: QuadNum) -> tuple[Fraction, Fraction]:
        """Rational (p, q) with x = p + q*g."""
        q = x.q / self.generator.q
        return x.p - q * self.generator.p, q

    def contains(self, x: QuadNum) -> bool:
        p, q = self.coordinates(x)
        return p.denominator == 1 and q.denominator == 1

    def __repr__(self) -> str:
        return f"OrderBasis(D={self.d_param}, generator={self.generator}, half={self.half_flag})"


def rational_part_fr(x: QuadNum, basis: OrderBasis) -> tuple[Fraction, Fraction, Fraction]:
    """Rational part, generator coefficient and fractional part of the rational part."""
    p, q = basis.coordinates(x)
    return p, q, p - (p.numerator // p.denominator)


# -- 2x2 matrices over Q(sqrt D), as nested tuples ---------------------

Matrix = tuple[tuple[QuadNum, QuadNum], tuple[QuadNum, QuadNum]]
Vec = tuple[QuadNum, QuadNum]


def matrix(rows, D: int) -> Matrix:
    (a, b), (c, d) = rows
    return ((qn(a, D), qn(b, D)), (qn(c, D), qn(d, D)))


def mat_det(M: Matrix) -> QuadNum:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def mat_mul(M: Matrix, N: Matrix) -> Matrix:
    return (
        (M[0][0] * N[0][0] + M[0][1] * N[1][0], M[0][0] * N[0][1] + M[0][1] * N[1][1]),
        (M[1][0] * N[0][0] + M[1][1] * N[1][0], M[1][0] * N[0][1] + M[1][1] * N[1][1]),
    )


def mat_inv(M: Matrix) -> Matrix:
    det = mat_det(M)
    if not det:
        raise DivisionByZero("singular matrix")
    return ((M[1][1] / det, -M[0][1] / det), (-M[1][0] / det, M[0][0] / det))


def mat_vec(M: Matrix, v: Vec) -> Vec:
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def identity(D: int) -> Matrix:
    return matrix(((1, 0), (0, 1)), D)


def lattice_basis(rows) -> list[list[Fraction]]:
    """Echelon Z-basis of the lattice spanned by rational row vectors."""
    from math import lcm

    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return []
    den = lcm(*(x.denominator for r in rows for x in r))
    M = [[int(x * den) for x in r] for r in rows]
    basis = []
    for col in range(len(M[0])):
        M = [r for r in M if any(r)]
        while True:
            nz = [r for r in M if r[col]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            M = [r if (r is piv or not r[col])
                 else [a - (r[col] // piv[col]) * b for a, b in zip(r, piv)] for r in M]
        nz = [r for r in M if r[col]]
        if nz:
            piv = nz[0] if nz[0][col] > 0 else [-x for x in nz[0]]
            basis.append(piv)
            M = [r for r in M if r is not nz[0]]
    return [[Fraction(x, den) for x in r] for r in basis]
