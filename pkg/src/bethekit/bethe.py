"""Formal Bethe vectors, transfer-matrix eigenvalues and the root solver.

A candidate state is built by applying off-diagonal monodromy blocks B
at a tuple of spectral parameters to the pseudovacuum.  The state is an
eigenvector of the transfer matrix exactly when the tuple solves the
Bethe equations, which are checked here in a pole-free form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .chain import local_alpha, local_delta, monodromy, pseudovacuum, vacuum_eigenvalues
from .errors import (
    COLLAPSED_ROOTS,
    DEGENERATE_ROOT,
    FAILED_CERTIFICATION,
    NO_CONVERGENCE,
    BetheKitError,
    CoincidentParameters,
    ModeMismatch,
    ProbeCoincidesWithRoot,
    ZeroVector,
)
from .linalg import max_abs
from .rmatrix import RATIONAL, kernel_f
from .scalars import EXACT, FLOAT, check_mode, coerce, sinh_value

# Float-mode parameters closer than this count as coincident.
COINCIDENT_TOL = 1e-12


def _validate_distinct(values, mode):
    n = len(values)
    for i in range(n):
        for j in range(i + 1, n):
            if mode == EXACT:
                clash = values[i] == values[j]
            else:
                clash = abs(values[i] - values[j]) < COINCIDENT_TOL
            if clash:
                raise CoincidentParameters(
                    f"spectral parameters {i} and {j} coincide"
                )


@dataclass(frozen=True)
class SpectralSet:
    """Pairwise-distinct spectral parameters in a fixed mode."""

    values: tuple
    mode: str

    def __post_init__(self):
        check_mode(self.mode)
        vals = tuple(coerce(x, self.mode) for x in self.values)
        _validate_distinct(vals, self.mode)
        object.__setattr__(self, "values", vals)

    @property
    def m(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def spectral_values(spec, lambdas):
    """Coerce a root container to validated raw values in the chain's mode."""
    if isinstance(lambdas, SpectralSet):
        if lambdas.mode != spec.mode:
            raise ModeMismatch(f"roots are {lambdas.mode}, chain is {spec.mode}")
        return lambdas.values
    vals = tuple(coerce(x, spec.mode) for x in lambdas)
    _validate_distinct(vals, spec.mode)
    return vals


def formal_bethe_vector(spec, lambdas):
    """Apply B(lam_1) ... B(lam_M) to the pseudovacuum."""
    vals = spectral_values(spec, lambdas)
    v = pseudovacuum(spec.n_sites, spec.mode)
    for lam in reversed(vals):
        v = monodromy(spec, lam).b @ v
    return v


def transfer_matrix(spec, mu):
    """Trace of the monodromy over the auxiliary space, A + D."""
    t = monodromy(spec, mu)
    return t.a + t.d


def _check_probe(vals, mu, mode):
    for lam in vals:
        if mode == EXACT:
            clash = mu == lam
        else:
            clash = abs(mu - lam) < COINCIDENT_TOL
        if clash:
            raise ProbeCoincidesWithRoot("probe point equals a spectral parameter")


def tau_eigenvalue(spec, mu, lambdas):
    """Candidate transfer-matrix eigenvalue at probe mu for the given roots."""
    vals = spectral_values(spec, lambdas)
    mu = coerce(mu, spec.mode)
    _check_probe(vals, mu, spec.mode)
    a, d = vacuum_eigenvalues(spec, mu)
    term_a = a
    term_d = d
    for lam in vals:
        term_a = term_a * kernel_f(spec.kernel, lam, mu)
        term_d = term_d * kernel_f(spec.kernel, mu, lam)
    return term_a + term_d


def bethe_y(spec, k, lambdas):
    """Pole-free Bethe-equation defect for root k (0-based).

    The two tau terms are multiplied through by the product of kernel
    denominators at mu = lam_k, so the expression is polynomial in the
    roots and vanishes exactly on Bethe solutions.  Coincident tuples
    are allowed here since the would-be poles cancel.
    """
    vals = tuple(coerce(x, spec.mode) for x in lambdas)
    m = len(vals)
    if not 0 <= k < m:
        raise IndexError(f"root index {k} outside 0..{m - 1}")
    lam_k = vals[k]
    a, d = vacuum_eigenvalues(spec, lam_k)
    term_a = a
    term_d = -d if m % 2 else d
    for i, lam in enumerate(vals):
        if i == k:
            continue
        if spec.kernel.kind == RATIONAL:
            term_a = term_a * (lam - lam_k + 1)
            term_d = term_d * (lam_k - lam + 1)
        else:
            eta = spec.kernel.eta
            sh = sinh_value(eta)
            term_a = term_a * (sinh_value(lam - lam_k + eta) / sh)
            term_d = term_d * (sinh_value(lam_k - lam + eta) / sh)
    return term_a + term_d


def certify_eigenvector(spec, lambdas, mu):
    """Relative eigenvector residual and tau for a root tuple at probe mu.

    Returns (residual, tau) where residual is the max-norm of
    (transfer @ v - tau v) over the max-norm of v.
    """
    vals = spectral_values(spec, lambdas)
    mu = coerce(mu, spec.mode)
    _check_probe(vals, mu, spec.mode)
    v = formal_bethe_vector(spec, vals)
    scale = max_abs(v)
    if scale == 0:
        raise ZeroVector("formal Bethe vector vanishes")
    tau = tau_eigenvalue(spec, mu, vals)
    resid = max_abs(transfer_matrix(spec, mu) @ v - v * tau)
    return resid / scale, tau


@dataclass(frozen=True)
class BetheCertificate:
    """A certified root tuple with its residuals and eigenvalue."""

    roots: tuple
    bethe_residuals: tuple
    eigen_residual: float
    tau_value: complex
    probe_mu: complex

    @property
    def m(self):
        return len(self.roots)

    def is_valid(self, tol=1e-10):
        worst = max(self.bethe_residuals, default=0.0)
        return worst <= tol and self.eigen_residual <= tol


@dataclass(frozen=True)
class RejectedGuess:
    guess: tuple
    reason: str
    detail: str = ""


@dataclass
class BetheSolveResult:
    certificates: list = field(default_factory=list)
    rejections: list = field(default_factory=list)


def _y_system(spec, roots):
    return np.array(
        [complex(bethe_y(spec, k, roots)) for k in range(len(roots))],
        dtype=complex,
    )


def _newton(spec, guess, max_iter, converge_tol):
    roots = np.array(guess, dtype=complex)
    fv = _y_system(spec, roots)
    norm = float(np.max(np.abs(fv))) if len(fv) else 0.0
    for _ in range(max_iter):
        if norm < converge_tol:
            return roots, norm
        m = len(roots)
        jac = np.empty((m, m), dtype=complex)
        for j in range(m):
            h = 1e-7 * (1.0 + abs(roots[j]))
            bumped = roots.copy()
            bumped[j] = roots[j] + h
            f_plus = _y_system(spec, bumped)
            bumped[j] = roots[j] - h
            f_minus = _y_system(spec, bumped)
            jac[:, j] = (f_plus - f_minus) / (2 * h)
        try:
            step = np.linalg.solve(jac, -fv)
        except np.linalg.LinAlgError:
            return None, norm
        # Halve the step while the residual refuses to decrease.
        t = 1.0
        while t > 1.0 / 64:
            trial = roots + t * step
            f_trial = _y_system(spec, trial)
            trial_norm = float(np.max(np.abs(f_trial)))
            if trial_norm <= norm or norm < converge_tol:
                roots, fv, norm = trial, f_trial, trial_norm
                break
            t /= 2
        else:
            roots = roots + (1.0 / 64) * step
            fv = _y_system(spec, roots)
            norm = float(np.max(np.abs(fv)))
    if norm < converge_tol:
        return roots, norm
    return None, norm


def _sorted_roots(roots):
    return tuple(sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9))))


def _is_duplicate(roots, accepted, dedup_tol):
    for other in accepted:
        if len(other) == len(roots) and all(
            abs(a - b) <= dedup_tol for a, b in zip(roots, other)
        ):
            return True
    return False


def default_guesses(spec, m, n_guesses, rng):
    """Seeded starting points in a box around the inhomogeneities."""
    center = sum(z.real for z in spec.xi) / spec.n_sites - 0.5
    guesses = []
    for _ in range(n_guesses):
        guesses.append(
            tuple(
                complex(rng.uniform(center - 2.0, center + 1.5), rng.uniform(-1.5, 1.5))
                for _ in range(m)
            )
        )
    return guesses


def solve_bethe(spec, m, guesses=None, n_guesses=40, seed=0, max_iter=200,
                converge_tol=1e-12, separation=1e-8, dedup_tol=1e-6,
                degenerate_tol=1e-8, certify_tol=1e-9, probe=None):
    """Damped Newton search for Bethe root tuples, with certification.

    Every converged tuple is screened: coincident roots and roots at
    zeros of the local vacuum weights are rejected (recorded, not
    raised), survivors are deduplicated up to permutation and certified
    against the transfer matrix at one seeded probe point.  The last
    screen matters: near a degenerate solution the two cancelled
    equations become dependent and Newton can stall anywhere on a thin
    curve of spurious tuples, which only eigenvector certification
    detects.  Tuples whose residual exceeds certify_tol are rejected,
    so every returned certificate is a certified eigenvector.
    """
    spec = spec.as_float()
    rng = random.Random(seed)
    if guesses is None:
        guesses = default_guesses(spec, m, n_guesses, rng)
    result = BetheSolveResult()
    accepted = []
    for guess in guesses:
        guess = tuple(complex(coerce(z, FLOAT)) for z in guess)
        if len(guess) != m:
            result.rejections.append(
                RejectedGuess(guess, NO_CONVERGENCE, f"guess has {len(guess)} roots, expected {m}")
            )
            continue
        roots, norm = _newton(spec, guess, max_iter, converge_tol)
        if roots is None:
            result.rejections.append(
                RejectedGuess(guess, NO_CONVERGENCE, f"final residual {norm:.3e}")
            )
            continue
        roots = _sorted_roots(tuple(complex(z) for z in roots))
        if any(
            abs(roots[i] - roots[j]) < separation
            for i in range(m)
            for j in range(i + 1, m)
        ):
            result.rejections.append(
                RejectedGuess(guess, COLLAPSED_ROOTS, "roots closer than separation threshold")
            )
            continue
        degenerate = False
        for lam in roots:
            for j in range(1, spec.n_sites + 1):
                if (
                    abs(local_alpha(spec, lam, j)) < degenerate_tol
                    or abs(local_delta(spec, lam, j)) < degenerate_tol
                ):
                    degenerate = True
                    break
            if degenerate:
                break
        if degenerate:
            result.rejections.append(
                RejectedGuess(guess, DEGENERATE_ROOT, "root at a zero of a local vacuum weight")
            )
            continue
        if _is_duplicate(roots, accepted, dedup_tol):
            continue
        accepted.append(roots)
    accepted.sort(key=lambda rs: [(round(z.real, 9), round(z.imag, 9)) for z in rs])
    if probe is None:
        flat = [z for rs in accepted for z in rs] + list(spec.xi)
        while True:
            mu = complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0))
            if all(abs(mu - z) >= 0.1 for z in flat):
                probe = mu
                break
    else:
        probe = complex(coerce(probe, FLOAT))
    for roots in accepted:
        bethe_res = tuple(float(abs(bethe_y(spec, k, roots))) for k in range(m))
        try:
            eigen_res, tau = certify_eigenvector(spec, roots, probe)
        except BetheKitError as exc:
            result.rejections.append(
                RejectedGuess(roots, FAILED_CERTIFICATION, f"{type(exc).__name__}: {exc}")
            )
            continue
        if float(eigen_res) > certify_tol:
            result.rejections.append(
                RejectedGuess(
                    roots, FAILED_CERTIFICATION,
                    f"eigenvector residual {float(eigen_res):.3e}",
                )
            )
            continue
        result.certificates.append(
            BetheCertificate(
                roots=roots,
                bethe_residuals=bethe_res,
                eigen_residual=float(eigen_res),
                tau_value=complex(tau),
                probe_mu=probe,
            )
        )
    return result
