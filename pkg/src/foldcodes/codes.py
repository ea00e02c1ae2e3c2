"""Folded Reed-Solomon and univariate multiplicity codes.

A codeword is a tuple of ``n`` blocks, each a tuple of ``s`` field elements.
Messages are polynomials of degree ``< k``, passed either as :class:`Poly` or
as length-``k`` coefficient vectors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    DegreeTooHigh,
    InfeasibleEpsilon,
    InvalidSpec,
    ListExceedsFolding,
    SpecMismatch,
    TooLong,
)
from .field_poly import Field, Poly, hasse_derivative, poly_eval

FRS = "frs"
MULT = "mult"
FAMILIES = (FRS, MULT)

Block = tuple[int, ...]
Codeword = tuple[Block, ...]
CoeffVec = tuple[int, ...]
Message = Union[Poly, Sequence[int]]

_JSON_KEYS = ("family", "p", "gamma", "s", "n", "k", "alphas")


@dataclass(frozen=True)
class CodeSpec:
    field: Field
    family: str
    s: int
    n: int
    k: int
    alphas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) % self.field.p for a in self.alphas))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.s * self.n)

    @property
    def num_messages(self) -> int:
        return self.p**self.k

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "gamma": self.field.gamma,
            "s": self.s,
            "n": self.n,
            "k": self.k,
            "alphas": list(self.alphas),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> CodeSpec:
        extra = set(d) - set(_JSON_KEYS)
        if extra:
            raise InvalidSpec(f"unknown keys in spec: {sorted(extra)}")
        missing = [key for key in _JSON_KEYS if key not in d]
        if missing:
            raise InvalidSpec(f"missing keys in spec: {missing}")
        for key in _JSON_KEYS[1:6]:
            if not isinstance(d[key], int) or isinstance(d[key], bool):
                raise InvalidSpec(f"{key} must be an integer")
        if not isinstance(d["alphas"], list) or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in d["alphas"]
        ):
            raise InvalidSpec("alphas must be a list of integers")
        try:
            field = Field(d["p"], d["gamma"])
        except ValueError as exc:
            raise InvalidSpec(str(exc)) from exc
        return cls(field, d["family"], d["s"], d["n"], d["k"], tuple(d["alphas"]))

    @classmethod
    def from_json(cls, text: str) -> CodeSpec:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"malformed spec JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise InvalidSpec("spec JSON must be an object")
        return cls.from_dict(d)

    def checked(self) -> CodeSpec:
        """Return ``self`` or raise :class:`InvalidSpec` with the first violation."""
        problem = validate_spec(self)
        if problem:
            raise InvalidSpec(problem)
        return self


def validate_spec(spec: CodeSpec) -> str | None:
    """Check every CodeSpec invariant; ``None`` when valid, else a description."""
    p = spec.p
    if spec.family not in FAMILIES:
        return f"unknown family {spec.family!r}"
    if spec.s < 1:
        return "s must be at least 1"
    if spec.n < 1:
        return "n must be at least 1"
    if not 1 <= spec.k <= spec.s * spec.n:
        return f"k={spec.k} outside [1, s*n={spec.s * spec.n}]"
    if len(spec.alphas) != spec.n:
        return f"expected {spec.n} evaluation points, got {len(spec.alphas)}"

    if spec.family == FRS:
        if spec.s * spec.n > p - 1:
            return f"s*n={spec.s * spec.n} exceeds p-1={p - 1}"
        for j, a in enumerate(spec.alphas, 1):
            if a == 0:
                return f"alpha_{j} is zero"
        seen: dict[int, tuple[int, int]] = {}
        g = spec.field.gamma
        for j, a in enumerate(spec.alphas, 1):
            x = a
            for i in range(spec.s):
                if x in seen:
                    i0, j0 = seen[x]
                    return (
                        f"not appropriate: gamma^{i0}*alpha_{j0} = gamma^{i}*alpha_{j} = {x}"
                    )
                seen[x] = (i, j)
                x = x * g % p
    else:
        if spec.n > p:
            return f"n={spec.n} exceeds p={p}"
        if spec.k >= p:
            return f"k={spec.k} must be below p={p}"
        seen_a: dict[int, int] = {}
        for j, a in enumerate(spec.alphas, 1):
            if a in seen_a:
                return f"duplicate alpha: alpha_{seen_a[a]} = alpha_{j} = {a}"
            seen_a[a] = j
    return None


def make_appropriate_alphas(field: Field, s: int, n: int) -> tuple[int, ...]:
    """alpha_j = gamma^(s*(j-1)); the s*n shifted points then exhaust distinct powers."""
    if s * n > field.p - 1:
        raise TooLong(f"s*n={s * n} exceeds p-1={field.p - 1}")
    return tuple(pow(field.gamma, s * j, field.p) for j in range(n))


def make_spec(family: str, p: int, s: int, n: int, k: int, gamma: int | None = None) -> CodeSpec:
    """Canonical validated instance: shifted powers of gamma for FRS, 0..n-1 for MULT."""
    field = Field(p, gamma)
    if family == FRS:
        alphas = make_appropriate_alphas(field, s, n)
    elif family == MULT:
        if n > p:
            raise TooLong(f"n={n} exceeds p={p}")
        alphas = tuple(range(n))
    else:
        raise InvalidSpec(f"unknown family {family!r}")
    return CodeSpec(field, family, s, n, k, alphas).checked()


def as_poly(spec: CodeSpec, f: Message) -> Poly:
    if isinstance(f, Poly):
        if f.field.p != spec.p:
            raise SpecMismatch("message is over a different field")
        return f
    return Poly(spec.field, tuple(f))


def encode(spec: CodeSpec, f: Message) -> Codeword:
    f = as_poly(spec, f)
    if f.degree >= spec.k:
        raise DegreeTooHigh(f"deg f = {f.degree} but k = {spec.k}")
    p, g = spec.p, spec.field.gamma
    if spec.family == FRS:
        return tuple(
            tuple(poly_eval(f, a * pow(g, i, p) % p) for i in range(spec.s)) for a in spec.alphas
        )
    derivs = [hasse_derivative(f, i) for i in range(spec.s)]
    return tuple(tuple(poly_eval(d, a) for d in derivs) for a in spec.alphas)


def generator_matrix(spec: CodeSpec) -> list[list[int]]:
    """Rows are the flattened encodings of X^0, ..., X^(k-1); encoding is linear."""
    return [
        [x for block in encode(spec, Poly.monomial(spec.field, t)) for x in block]
        for t in range(spec.k)
    ]


def hamming_distance(a: Codeword, b: Codeword) -> int:
    """Number of block positions where ``a`` and ``b`` differ."""
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)):
        raise SpecMismatch("codewords have different shapes")
    return sum(x != y for x, y in zip(a, b))


def radius_bound(L: int, s: int, R: Fraction) -> Fraction:
    """(L/(L+1)) * (1 - sR/(s-L+1)), the list-decoding radius for list size L."""
    R = Fraction(R)
    if L < 1:
        raise ValueError("L must be at least 1")
    if L > s:
        raise ListExceedsFolding(f"L={L} exceeds s={s}")
    if not 0 < R <= 1:
        raise ValueError("rate must lie in (0, 1]")
    return Fraction(L, L + 1) * (1 - s * R / (s - L + 1))


def singleton_bound(L: int, R: Fraction) -> Fraction:
    if L < 1:
        raise ValueError("L must be at least 1")
    return Fraction(L, L + 1) * (1 - Fraction(R))


def _smallest_int_above(x: Fraction) -> int:
    return math.floor(x) + 1


def min_folding(L: int, epsilon: Fraction, R: Fraction) -> int | None:
    """Smallest s with s > L(L-1)R / (eps*L - (1-R-eps)) + L - 1, or None if L is too small."""
    denom = epsilon * L - (1 - R - epsilon)
    if denom <= 0:
        return None
    return _smallest_int_above(L * (L - 1) * R / denom + L - 1)


@dataclass(frozen=True)
class Setting:
    name: str
    L: int
    s_min: int | None
    feasible: bool
    stated_s: int | None = None
    stated_s_ok: bool | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "L": self.L,
            "s_min": self.s_min,
            "feasible": self.feasible,
            "stated_s": self.stated_s,
            "stated_s_ok": self.stated_s_ok,
        }


@dataclass(frozen=True)
class CorollaryParams:
    epsilon: Fraction
    R: Fraction
    L: int
    s_min: int
    settings: tuple[Setting, ...]

    def to_dict(self) -> dict:
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}

        return {
            "epsilon": frac(self.epsilon),
            "R": frac(self.R),
            "L": self.L,
            "s_min": self.s_min,
            "settings": [st.to_dict() for st in self.settings],
        }

    @classmethod
    def from_dict(cls, d: dict) -> CorollaryParams:
        return cls(
            Fraction(d["epsilon"]["num"], d["epsilon"]["den"]),
            Fraction(d["R"]["num"], d["R"]["den"]),
            d["L"],
            d["s_min"],
            tuple(Setting(**st) for st in d["settings"]),
        )


def _capacity_ok(L: int, s: int, R: Fraction, epsilon: Fraction) -> bool:
    return L <= s and radius_bound(L, s, R) > 1 - R - epsilon


def corollary_params(epsilon: Fraction, R: Fraction) -> CorollaryParams:
    """List size and folding needed to reach radius 1 - R - epsilon.

    Settings (a) floor((1-R)/eps), (b) ceil((1-R)/eps) and (c) ceil(1/eps) are
    each re-derived from the general inequality.  For (b) and (c) the folding
    constants ceil(3/eps^3) and ceil(3/eps^2) are also tested directly
    (``stated_s`` is one past the constant, the smallest admissible s).
    """
    epsilon, R = Fraction(epsilon), Fraction(R)
    if not 0 < R < 1:
        raise ValueError("rate must lie in (0, 1)")
    if not 0 < epsilon < 1 - R:
        raise InfeasibleEpsilon(f"need 0 < eps < 1 - R, got eps={epsilon}, R={R}")
    L = _smallest_int_above((1 - R - epsilon) / epsilon)
    s_min = min_folding(L, epsilon, R)
    assert s_min is not None and _capacity_ok(L, s_min, R, epsilon)

    def setting(name, L_, stated=None):
        s_ = min_folding(L_, epsilon, R)
        feasible = L_ >= 1 and s_ is not None and _capacity_ok(L_, s_, R, epsilon)
        stated_ok = None
        if stated is not None and L_ >= 1:
            stated_ok = _capacity_ok(L_, stated, R, epsilon)
        return Setting(name, L_, s_, feasible, stated, stated_ok)

    ratio = (1 - R) / epsilon
    settings = (
        setting("a", math.floor(ratio)),
        setting("b", math.ceil(ratio), math.ceil(3 / epsilon**3) + 1),
        setting("c", math.ceil(1 / epsilon), math.ceil(3 / epsilon**2) + 1),
    )
    return CorollaryParams(epsilon, R, L, s_min, settings)
