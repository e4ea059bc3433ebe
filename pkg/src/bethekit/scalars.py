"""Field elements in two arithmetic modes.

Exact mode carries rationals (gmpy2.mpq) and is closed under the four
field operations, so residuals that should vanish vanish identically.
Float mode carries complex128 and admits transcendental kernels.  The
two modes never mix inside one expression.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import isfinite

from gmpy2 import mpq

from .errors import DivisionByZero, ExactModeUnsupported, ModeMismatch, NearPole

EXACT = "exact"
FLOAT = "float"

# Divisors of smaller magnitude than this are treated as poles in float mode.
POLE_THRESHOLD = 1e-300

ZERO_EXACT = mpq(0)
ONE_EXACT = mpq(1)


def check_mode(mode):
    if mode not in (EXACT, FLOAT):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def coerce(x, mode):
    """Coerce a user-supplied number to the backend value for `mode`.

    Exact mode accepts int, Fraction, mpq and strings like "3" or "-7/2";
    float and complex inputs are refused rather than silently rationalized.
    Float mode accepts any of those plus float and complex.
    """
    check_mode(mode)
    if isinstance(x, Scalar):
        if x.mode != mode:
            raise ModeMismatch(f"scalar has mode {x.mode}, expected {mode}")
        return x.value
    if mode == EXACT:
        if isinstance(x, (int, Fraction)) or type(x) is mpq:
            return mpq(x)
        if isinstance(x, str):
            return _parse_rational(x)
        raise ExactModeUnsupported(f"cannot represent {type(x).__name__} exactly")
    if isinstance(x, str):
        return complex(_parse_rational(x))
    if isinstance(x, (int, float, complex, Fraction)) or type(x) is mpq:
        return complex(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a float-mode value")


def _parse_rational(s):
    s = s.strip()
    if "/" in s:
        return mpq(s)
    # Fraction handles both integer and decimal literals exactly.
    return mpq(Fraction(s))


def checked_div(a, b, mode, pole_threshold=POLE_THRESHOLD):
    """Division with explicit pole detection in both modes."""
    if mode == EXACT:
        if b == 0:
            raise DivisionByZero("exact division by zero")
        return a / b
    if abs(b) < pole_threshold:
        raise NearPole(f"divisor magnitude {abs(b):.3e} below pole threshold")
    return a / b


def sinh_value(z):
    """Hyperbolic sine on float-mode values; refuses exact inputs."""
    if type(z) is mpq:
        raise ExactModeUnsupported("sinh is not closed over the rationals")
    return cmath.sinh(complex(z))


def abs_value(x):
    """Magnitude of a backend value (mpq stays exact, complex gives float)."""
    if type(x) is mpq:
        return x if x >= 0 else -x
    return abs(x)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its arithmetic mode.

    Arithmetic between scalars of different modes raises ModeMismatch;
    division by zero raises DivisionByZero (exact) or NearPole (float).
    """

    value: object
    mode: str

    def __post_init__(self):
        check_mode(self.mode)
        object.__setattr__(self, "value", coerce(self.value, self.mode))

    @classmethod
    def exact(cls, num, den=1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        return cls(mpq(num, den), EXACT)

    @classmethod
    def of(cls, x, mode):
        return cls(x, mode)

    def _check(self, other):
        if not isinstance(other, Scalar):
            raise TypeError("Scalar arithmetic requires Scalar operands")
        if other.mode != self.mode:
            raise ModeMismatch(f"cannot combine {self.mode} with {other.mode}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.value + other.value, self.mode)

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.value - other.value, self.mode)

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.value * other.value, self.mode)

    def __truediv__(self, other):
        other = self._check(other)
        return Scalar(checked_div(self.value, other.value, self.mode), self.mode)

    def __neg__(self):
        return Scalar(-self.value, self.mode)

    def conj(self):
        if self.mode == EXACT:
            return self
        return Scalar(self.value.conjugate(), self.mode)

    def __abs__(self):
        return abs_value(self.value)

    def sinh(self):
        if self.mode == EXACT:
            raise ExactModeUnsupported("sinh is not closed over the rationals")
        return Scalar(sinh_value(self.value), self.mode)

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class Tolerance:
    """Residual acceptance thresholds for float-mode checks."""

    absolute: float = 1e-12
    relative: float = 1e-12

    def __post_init__(self):
        for name in ("absolute", "relative"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and isfinite(v) and v >= 0):
                raise ValueError(f"{name} tolerance must be finite and nonnegative")

    def ok(self, residual, scale=1.0):
        return float(abs(residual)) <= self.absolute + self.relative * abs(scale)
