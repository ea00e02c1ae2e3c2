"""Prime-field arithmetic and dense univariate polynomials over F_p.

Field elements are plain Python ints in ``[0, p)``.  A :class:`Field` carries
the modulus together with a fixed generator of the multiplicative group, which
the folded code family needs.  :class:`Poly` is an immutable, normalized dense
coefficient tuple (index ``i`` holds the coefficient of ``X**i``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InversionOfZero, NotPrime, ZeroPolynomial

MAX_MODULUS = 2**31

#: degree of the zero polynomial
DEG_ZERO = -math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, p: int) -> int:
    """Order of ``a`` in F_p^x by brute force (use only for small p)."""
    a %= p
    if a == 0:
        raise InversionOfZero("0 has no multiplicative order")
    x, r = a, 1
    while x != 1:
        x = x * a % p
        r += 1
    return r


def _is_primitive(g: int, p: int) -> bool:
    if p == 2:
        return g % 2 == 1
    return all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1))


def find_generator(p: int) -> int:
    """Smallest primitive root modulo the prime ``p`` (``1`` for ``p = 2``)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    g = 2
    while not _is_primitive(g, p):
        g += 1
    return g


def binomial_mod(n: int, i: int, p: int) -> int:
    """``C(n, i) mod p`` via Lucas' theorem."""
    if i < 0 or i > n:
        return 0
    result = 1
    while n or i:
        nd, id_ = n % p, i % p
        if id_ > nd:
            return 0
        result = result * math.comb(nd, id_) % p
        n //= p
        i //= p
    return result


@dataclass(frozen=True)
class Field:
    """The prime field F_p with a designated generator ``gamma`` of F_p^x.

    ``gamma`` defaults to the smallest primitive root.
    """

    p: int
    gamma: int | None = None

    def __post_init__(self):
        if not is_prime(self.p) or self.p > MAX_MODULUS:
            raise NotPrime(f"{self.p} is not a supported prime modulus")
        if self.gamma is None:
            object.__setattr__(self, "gamma", find_generator(self.p))
        elif not (1 <= self.gamma < self.p) or not _is_primitive(self.gamma, self.p):
            raise ValueError(f"{self.gamma} does not generate F_{self.p}^x")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise InversionOfZero(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self) -> range:
        return range(self.p)


_OPS = {
    "add": Field.add,
    "sub": Field.sub,
    "mul": Field.mul,
    "pow": Field.pow,
}


def field_op(field: Field, op: str, a: int, b: int = 0) -> int:
    """Dispatch one of ``add, sub, mul, inv, pow`` by name."""
    if op == "inv":
        return field.inv(a)
    try:
        return _OPS[op](field, a, b)
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None


def _trim(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Immutable dense polynomial over ``field``; ``coeffs[i]`` multiplies X^i."""

    field: Field
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.field.p))

    # construction helpers
    @classmethod
    def zero(cls, field: Field) -> Poly:
        return cls(field, ())

    @classmethod
    def const(cls, field: Field, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: Field, n: int, c: int = 1) -> Poly:
        return cls(field, (0,) * n + (c,))

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable[int]) -> Poly:
        """Monic polynomial prod (X - r) over the given roots (with repetition)."""
        out = cls.const(field, 1)
        for r in roots:
            out = out * cls(field, (-r, 1))
        return out

    @classmethod
    def from_vec(cls, field: Field, vec: Sequence[int]) -> Poly:
        return cls(field, tuple(vec))

    def to_vec(self, k: int) -> tuple[int, ...]:
        """Zero-padded length-``k`` coefficient vector."""
        if len(self.coeffs) > k:
            raise ValueError(f"degree {self.degree} does not fit in length {k}")
        return self.coeffs + (0,) * (k - len(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __repr__(self):
        if not self.coeffs:
            return f"Poly(0 mod {self.field.p})"
        terms = [f"{c}*X^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"Poly({' + '.join(terms)} mod {self.field.p})"

    # arithmetic
    def _check(self, other: Poly):
        if other.field.p != self.field.p:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(self.field, tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(self.field, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        return Poly(self.field, tuple(c * x for x in self.coeffs))

    def __pow__(self, e: int) -> Poly:
        out = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = pow(other.coeffs[-1], -1, p)
        quot = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] * inv_lead % p
            if c:
                quot[i - db] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] = (rem[i - db + j] - c * y) % p
        return Poly(self.field, quot), Poly(self.field, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no monic form")
        return self.scale(pow(self.coeffs[-1], -1, self.field.p))

    def scale_arg(self, c: int) -> Poly:
        """``f(c X)``: coefficient a_t becomes a_t * c^t."""
        p = self.field.p
        out, ct = [], 1
        for a in self.coeffs:
            out.append(a * ct)
            ct = ct * c % p
        return Poly(self.field, out)

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)


def poly_eval(f: Poly, x: int) -> int:
    """Horner evaluation of ``f`` at ``x``."""
    p = f.field.p
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % p
    return acc


def hasse_derivative(f: Poly, i: int) -> Poly:
    """The ``i``-th Hasse derivative: coefficient of Z^i in f(X + Z)."""
    if i < 0:
        raise ValueError("derivative order must be non-negative")
    if i == 0:
        return f
    p = f.field.p
    return Poly(f.field, [binomial_mod(n, i, p) * a for n, a in enumerate(f.coeffs)][i:])


def _multiplicity_by_division(f: Poly, alpha: int) -> int:
    lin = Poly(f.field, (-alpha, 1))
    m = 0
    while True:
        q, r = divmod(f, lin)
        if r:
            return m
        f = q
        m += 1


def _multiplicity_by_hasse(f: Poly, alpha: int) -> int:
    i = 0
    while poly_eval(hasse_derivative(f, i), alpha) == 0:
        i += 1
    return i


def root_multiplicity(f: Poly, alpha: int, method: str = "division") -> int:
    """Largest m with (X - alpha)^m dividing ``f``.

    ``method="hasse"`` instead returns the first index i with
    ``hasse_derivative(f, i)(alpha) != 0``; the two always agree.
    """
    if not f:
        raise ZeroPolynomial("root multiplicity of the zero polynomial is unbounded")
    if method == "division":
        return _multiplicity_by_division(f, alpha)
    if method == "hasse":
        return _multiplicity_by_hasse(f, alpha)
    raise ValueError(f"unknown method {method!r}")


def total_roots_with_multiplicity(f: Poly) -> int:
    if not f:
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    if f.degree == 0:
        return 0
    return sum(_multiplicity_by_division(f, a) for a in f.field.elements() if poly_eval(f, a) == 0)
