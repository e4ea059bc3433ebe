"""Two-site R-matrices of the six-vertex type and the Yang-Baxter check.

Basis order on the tensor square is |11>, |12>, |21>, |22> with the
first factor slowest.  The rational kernel has weights
f = (u + 1)/u, g = 1/u and the trigonometric kernel
f = sinh(u + eta)/sinh(u), g = sinh(eta)/sinh(u), both in the
difference u = lambda - mu.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from .errors import DivisionByZero, PoleAtCoincidentArguments
from .linalg import identity_matrix, max_abs, zeros_matrix
from .scalars import EXACT, FLOAT, checked_div, coerce, sinh_value

RATIONAL = "rational"
TRIGONOMETRIC = "trigonometric"


@dataclass(frozen=True)
class Kernel:
    """Weight functions of the R-matrix, fixed by kind and anisotropy."""

    kind: str
    eta: complex | None = None

    def __post_init__(self):
        if self.kind not in (RATIONAL, TRIGONOMETRIC):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == RATIONAL:
            if self.eta is not None:
                raise ValueError("rational kernel takes no anisotropy")
        else:
            if self.eta is None:
                raise ValueError("trigonometric kernel needs an anisotropy")
            eta = complex(self.eta)
            if abs(sinh_value(eta)) < 1e-12:
                raise ValueError("sinh(eta) vanishes, kernel is degenerate")
            object.__setattr__(self, "eta", eta)

    @classmethod
    def rational(cls):
        return cls(RATIONAL)

    @classmethod
    def trigonometric(cls, eta):
        return cls(TRIGONOMETRIC, complex(coerce(eta, FLOAT)))


def kernel_mode(kernel, *values):
    """Exact iff the kernel is rational and every argument is rational."""
    if kernel.kind == RATIONAL and all(type(v) is mpq for v in values):
        return EXACT
    return FLOAT


def _diff(kernel, lam, mu, mode):
    if mode == EXACT:
        return lam - mu
    return complex(coerce(lam, FLOAT)) - complex(coerce(mu, FLOAT))


def kernel_f(kernel, lam, mu):
    mode = kernel_mode(kernel, lam, mu)
    u = _diff(kernel, lam, mu, mode)
    try:
        if kernel.kind == RATIONAL:
            return checked_div(u + 1, u, mode)
        return checked_div(sinh_value(u + kernel.eta), sinh_value(u), mode)
    except DivisionByZero as exc:
        raise PoleAtCoincidentArguments("kernel f at coincident arguments") from exc


def kernel_g(kernel, lam, mu):
    mode = kernel_mode(kernel, lam, mu)
    u = _diff(kernel, lam, mu, mode)
    one = mpq(1) if mode == EXACT else 1.0
    try:
        if kernel.kind == RATIONAL:
            return checked_div(one, u, mode)
        return checked_div(sinh_value(kernel.eta), sinh_value(u), mode)
    except DivisionByZero as exc:
        raise PoleAtCoincidentArguments("kernel g at coincident arguments") from exc


def permutation_matrix(mode):
    """The flip operator on the tensor square."""
    p = zeros_matrix(4, 4, mode)
    one = mpq(1) if mode == EXACT else 1.0 + 0.0j
    p[0, 0] = one
    p[1, 2] = one
    p[2, 1] = one
    p[3, 3] = one
    return p


def build_r_matrix(kernel, lam, mu):
    """4x4 R-matrix diag(f, 1, 1, f) with g on the middle antidiagonal."""
    mode = kernel_mode(kernel, lam, mu)
    f = kernel_f(kernel, lam, mu)
    g = kernel_g(kernel, lam, mu)
    r = zeros_matrix(4, 4, mode)
    one = mpq(1) if mode == EXACT else 1.0 + 0.0j
    r[0, 0] = f
    r[1, 1] = one
    r[2, 2] = one
    r[3, 3] = f
    r[1, 2] = g
    r[2, 1] = g
    return r


def yang_baxter_residual(kernel, l1, l2, l3):
    """Max-norm defect of R12 R13 R23 = R23 R13 R12 on the tensor cube."""
    mode = kernel_mode(kernel, l1, l2, l3)
    r12 = build_r_matrix(kernel, l1, l2)
    r13 = build_r_matrix(kernel, l1, l3)
    r23 = build_r_matrix(kernel, l2, l3)
    eye2 = identity_matrix(2, mode)
    m12 = np.kron(r12, eye2)
    m23 = np.kron(eye2, r23)
    m13 = zeros_matrix(8, 8, mode)
    # Space 2 rides along: index i = 4a + 2b + c for spins (a, b, c).
    for a in range(2):
        for c in range(2):
            for ap in range(2):
                for cp in range(2):
                    entry = r13[2 * a + c, 2 * ap + cp]
                    for b in range(2):
                        m13[4 * a + 2 * b + c, 4 * ap + 2 * b + cp] = entry
    lhs = m12 @ m13 @ m23
    rhs = m23 @ m13 @ m12
    return max_abs(lhs - rhs)
