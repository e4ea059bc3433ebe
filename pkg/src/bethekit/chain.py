"""Inhomogeneous spin-1/2 chains, local operators and monodromy blocks.

Site 1 is the most significant qubit, basis index 0 is all spins up
(the pseudovacuum).  The monodromy over a site range is the ordered
auxiliary-space product L_first ... L_last, stored as its four quantum
operator blocks A, B, C, D.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from .errors import (
    ExactModeUnsupported,
    IndexOutOfRange,
    InvalidRange,
    NonAdjacentRanges,
)
from .linalg import max_abs, zeros_matrix, zeros_vector
from .rmatrix import RATIONAL, Kernel, kernel_f, kernel_g, kernel_mode
from .scalars import EXACT, FLOAT, check_mode, coerce, sinh_value


@dataclass(frozen=True)
class ChainSpec:
    """A chain model: kernel, length, inhomogeneities and arithmetic mode."""

    kernel: Kernel
    n_sites: int
    xi: tuple
    mode: str

    def __post_init__(self):
        check_mode(self.mode)
        if self.n_sites < 1:
            raise ValueError("chain needs at least one site")
        if self.mode == EXACT and self.kernel.kind != RATIONAL:
            raise ExactModeUnsupported("exact mode requires the rational kernel")
        if isinstance(self.xi, (list, tuple)):
            values = tuple(coerce(x, self.mode) for x in self.xi)
        else:
            values = (coerce(self.xi, self.mode),) * self.n_sites
        if len(values) != self.n_sites:
            raise ValueError(f"expected {self.n_sites} inhomogeneities, got {len(values)}")
        object.__setattr__(self, "xi", values)

    @classmethod
    def xxx(cls, n_sites, xi=0, mode=EXACT):
        return cls(Kernel.rational(), n_sites, xi, mode)

    @classmethod
    def xxz(cls, n_sites, eta, xi=0):
        return cls(Kernel.trigonometric(eta), n_sites, xi, FLOAT)

    @property
    def dim(self):
        return 2 ** self.n_sites

    @property
    def homogeneous(self):
        return all(x == self.xi[0] for x in self.xi)

    def as_float(self):
        if self.mode == FLOAT:
            return self
        return ChainSpec(self.kernel, self.n_sites, tuple(complex(x) for x in self.xi), FLOAT)

    def site_xi(self, j):
        if not 1 <= j <= self.n_sites:
            raise IndexOutOfRange(f"site {j} outside 1..{self.n_sites}")
        return self.xi[j - 1]


def local_alpha(spec, lam, j):
    """Vacuum weight of the local A operator at site j."""
    z = coerce(lam, spec.mode) - spec.site_xi(j)
    if spec.kernel.kind == RATIONAL:
        return z + 1
    return sinh_value(z + spec.kernel.eta)


def local_delta(spec, lam, j):
    """Vacuum weight of the local D operator at site j."""
    z = coerce(lam, spec.mode) - spec.site_xi(j)
    if spec.kernel.kind == RATIONAL:
        return z
    return sinh_value(z)


VacuumFunctions = namedtuple("VacuumFunctions", ["alpha", "delta"])


def vacuum_functions(spec):
    """Per-site vacuum weights as callables of (lam, site index)."""
    return VacuumFunctions(
        lambda lam, j: local_alpha(spec, lam, j),
        lambda lam, j: local_delta(spec, lam, j),
    )


@dataclass(frozen=True)
class OperatorBlock:
    """Quantum-space blocks of a monodromy over sites first..last."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    first: int
    last: int
    mode: str

    @property
    def n_sites(self):
        return self.last - self.first + 1

    @property
    def dim(self):
        return 2 ** self.n_sites

    def blocks(self):
        return {(0, 0): self.a, (0, 1): self.b, (1, 0): self.c, (1, 1): self.d}


def l_operator(spec, j, lam):
    """Single-site monodromy block at site j."""
    if not 1 <= j <= spec.n_sites:
        raise IndexOutOfRange(f"site {j} outside 1..{spec.n_sites}")
    mode = spec.mode
    alpha = local_alpha(spec, lam, j)
    delta = local_delta(spec, lam, j)
    if spec.kernel.kind == RATIONAL:
        hop = mpq(1) if mode == EXACT else 1.0 + 0.0j
    else:
        hop = sinh_value(spec.kernel.eta)
    a = zeros_matrix(2, 2, mode)
    a[0, 0] = alpha
    a[1, 1] = delta
    d = zeros_matrix(2, 2, mode)
    d[0, 0] = delta
    d[1, 1] = alpha
    b = zeros_matrix(2, 2, mode)
    b[1, 0] = hop
    c = zeros_matrix(2, 2, mode)
    c[0, 1] = hop
    return OperatorBlock(a, b, c, d, j, j, mode)


def multiply_blocks(t1, t2):
    """Auxiliary-space product of two monodromies on adjacent ranges."""
    if t1.last + 1 != t2.first:
        raise NonAdjacentRanges(
            f"ranges [{t1.first},{t1.last}] and [{t2.first},{t2.last}] are not adjacent"
        )
    a = np.kron(t1.a, t2.a) + np.kron(t1.b, t2.c)
    b = np.kron(t1.a, t2.b) + np.kron(t1.b, t2.d)
    c = np.kron(t1.c, t2.a) + np.kron(t1.d, t2.c)
    d = np.kron(t1.c, t2.b) + np.kron(t1.d, t2.d)
    return OperatorBlock(a, b, c, d, t1.first, t2.last, t1.mode)


def partial_monodromy(spec, lam, first, last):
    """Monodromy of the contiguous subchain first..last."""
    if not (1 <= first <= last <= spec.n_sites):
        raise InvalidRange(f"range [{first},{last}] invalid for N={spec.n_sites}")
    acc = l_operator(spec, first, lam)
    for j in range(first + 1, last + 1):
        acc = multiply_blocks(acc, l_operator(spec, j, lam))
    return acc


def monodromy(spec, lam):
    """Full-chain monodromy blocks at spectral parameter lam."""
    return partial_monodromy(spec, lam, 1, spec.n_sites)


def pseudovacuum(n_sites, mode):
    """All-spins-up reference state on n_sites qubits."""
    v = zeros_vector(2 ** n_sites, mode)
    v[0] = mpq(1) if mode == EXACT else 1.0 + 0.0j
    return v


def vacuum_eigenvalues(spec, lam, first=1, last=None):
    """Products a, d of local vacuum weights over a site range."""
    if last is None:
        last = spec.n_sites
    if not (1 <= first <= last <= spec.n_sites):
        raise InvalidRange(f"range [{first},{last}] invalid for N={spec.n_sites}")
    one = mpq(1) if spec.mode == EXACT else 1.0 + 0.0j
    a = one
    d = one
    for j in range(first, last + 1):
        a = a * local_alpha(spec, lam, j)
        d = d * local_delta(spec, lam, j)
    return a, d


def rtt_residual(spec, lam, mu, first=1, last=None, per_block=False):
    """Defect of the bilinear exchange identity for monodromies.

    Checks all 16 operator blocks of R (T(lam) x T(mu)) against
    (T(mu) x T(lam)) R, where the tensor product is in the auxiliary
    pair of spaces.  Returns the max residual, or all 16 block
    residuals keyed by auxiliary indices when per_block is set.
    """
    if last is None:
        last = spec.n_sites
    lam = coerce(lam, spec.mode)
    mu = coerce(mu, spec.mode)
    tx = partial_monodromy(spec, lam, first, last)
    ty = partial_monodromy(spec, mu, first, last)
    x = tx.blocks()
    y = ty.blocks()
    mode = kernel_mode(spec.kernel, lam, mu)
    f = kernel_f(spec.kernel, lam, mu)
    g = kernel_g(spec.kernel, lam, mu)
    one = mpq(1) if mode == EXACT else 1.0 + 0.0j
    # Sparse R in the auxiliary pair basis (2a + b rows, 2e + f cols).
    r = {
        (0, 0): {(0, 0): f},
        (0, 1): {(0, 1): one, (1, 0): g},
        (1, 0): {(1, 0): one, (0, 1): g},
        (1, 1): {(1, 1): f},
    }
    xy = {}
    yx = {}
    for p in range(2):
        for q in range(2):
            for s in range(2):
                for t in range(2):
                    xy[p, q, s, t] = x[p, q] @ y[s, t]
                    yx[p, q, s, t] = y[p, q] @ x[s, t]
    residuals = {}
    for a_i in range(2):
        for b_i in range(2):
            for c_i in range(2):
                for d_i in range(2):
                    lhs = None
                    for (e_i, f_i), w in r[a_i, b_i].items():
                        term = xy[e_i, c_i, f_i, d_i] * w
                        lhs = term if lhs is None else lhs + term
                    rhs = None
                    for (e_i, f_i), rcd in r.items():
                        w = rcd.get((c_i, d_i))
                        if w is None:
                            continue
                        term = yx[b_i, f_i, a_i, e_i] * w
                        rhs = term if rhs is None else rhs + term
                    key = f"{a_i + 1}{b_i + 1},{c_i + 1}{d_i + 1}"
                    residuals[key] = max_abs(lhs - rhs)
    if per_block:
        return residuals
    worst = None
    for v in residuals.values():
        if worst is None or v > worst:
            worst = v
    return worst


def commutation_residuals(spec, lam, mu):
    """Defects of the named exchange relations between monodromy blocks.

    Keys AA, BB, CC, DD are plain commutators of like blocks at the two
    parameters; AB, BA, DB are the three-term exchange relations used to
    move diagonal blocks through a product of B operators.
    """
    lam = coerce(lam, spec.mode)
    mu = coerce(mu, spec.mode)
    tx = monodromy(spec, lam)
    ty = monodromy(spec, mu)
    k = spec.kernel
    f_lm = kernel_f(k, lam, mu)
    g_ml = kernel_g(k, mu, lam)
    f_ml = kernel_f(k, mu, lam)
    g_lm = kernel_g(k, lam, mu)
    out = {}
    for name, xb, yb in (
        ("AA", tx.a, ty.a),
        ("BB", tx.b, ty.b),
        ("CC", tx.c, ty.c),
        ("DD", tx.d, ty.d),
    ):
        out[name] = max_abs(xb @ yb - yb @ xb)
    out["AB"] = max_abs(ty.a @ tx.b - (tx.b @ ty.a) * f_lm - (ty.b @ tx.a) * g_ml)
    out["BA"] = max_abs(ty.b @ tx.a - (tx.a @ ty.b) * f_lm - (ty.a @ tx.b) * g_ml)
    out["DB"] = max_abs(ty.d @ tx.b - (tx.b @ ty.d) * f_ml - (ty.b @ tx.d) * g_lm)
    return out
