"""Brute-force transfer-matrix spectra and certificate matching.

The transfer matrix preserves the number of down spins, so the dense
oracle diagonalizes one sector block at a time and remembers which
basis states each block lives on.  Certified Bethe eigenvalues are then
located in the sector with as many down spins as roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .bethe import transfer_matrix
from .errors import DimensionCapExceeded, ExactModeUnsupported, UnmatchedCertificate
from .scalars import FLOAT, coerce

DIMENSION_CAP = 12


def down_spin_count(index):
    return int(index).bit_count()


def sector_indices(n_sites, m):
    """Basis indices with exactly m down spins."""
    return tuple(i for i in range(2 ** n_sites) if down_spin_count(i) == m)


@dataclass(frozen=True)
class SectorSpectrum:
    """Eigendata of one down-spin sector block."""

    m: int
    indices: tuple
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SpectrumReport:
    """Sector-resolved dense spectrum of the transfer matrix at one probe."""

    probe_mu: complex
    n_sites: int
    sectors: tuple
    off_sector_residual: float
    matched_bethe: object = None

    def sector(self, m):
        return self.sectors[m]

    @property
    def eigenvalues(self):
        return np.concatenate([s.eigenvalues for s in self.sectors])

    @property
    def sector_labels(self):
        return [s.m for s in self.sectors for _ in s.eigenvalues]


def dense_spectrum(spec, mu, cap=DIMENSION_CAP):
    """Full spectrum of the transfer matrix, one eigenproblem per sector.

    Requires float mode (the blocks are not normal, eigendata is
    numeric) and refuses chains past the size cap.  Also reports the
    largest matrix entry outside all sector blocks, which vanishes when
    the down-spin grading really is preserved.
    """
    if spec.mode != FLOAT:
        raise ExactModeUnsupported("dense spectra are computed in float mode")
    if spec.n_sites > cap:
        raise DimensionCapExceeded(f"N={spec.n_sites} beyond cap {cap}")
    mu = complex(coerce(mu, FLOAT))
    tmat = np.asarray(transfer_matrix(spec, mu), dtype=complex)
    stripped = tmat.copy()
    sectors = []
    for m in range(spec.n_sites + 1):
        idx = sector_indices(spec.n_sites, m)
        block = tmat[np.ix_(idx, idx)]
        stripped[np.ix_(idx, idx)] = 0.0
        w, vr = scipy.linalg.eig(block)
        order = np.lexsort((np.round(w.imag, 9), np.round(w.real, 9)))
        sectors.append(
            SectorSpectrum(
                m=m,
                indices=idx,
                eigenvalues=w[order],
                eigenvectors=vr[:, order],
            )
        )
    return SpectrumReport(
        probe_mu=mu,
        n_sites=spec.n_sites,
        sectors=tuple(sectors),
        off_sector_residual=float(np.max(np.abs(stripped))),
    )


@dataclass(frozen=True)
class MatchedPair:
    certificate_index: int
    sector: int
    eigenvalue: complex
    distance: float
    multiplicity: int


@dataclass(frozen=True)
class SpectrumMatching:
    pairs: tuple
    unmatched: tuple


def match_bethe_to_spectrum(report, certificates, tol=1e-9, degeneracy_tol=1e-8):
    """Greedily pair each certificate's tau with a nearest sector eigenvalue.

    Certificates must come from the same probe point as the report.  A
    certificate with no sector eigenvalue within tol raises
    UnmatchedCertificate; spectrum eigenvalues left unpaired are merely
    reported, since not every state is a Bethe state reachable by one
    solver run.
    """
    for cert in certificates:
        if abs(complex(cert.probe_mu) - report.probe_mu) > 1e-12:
            raise ValueError("certificate probe differs from spectrum probe")
    consumed = {m: [False] * len(report.sector(m).eigenvalues) for m in range(report.n_sites + 1)}
    pairs = []
    for ci, cert in enumerate(certificates):
        m = cert.m
        if m > report.n_sites:
            raise UnmatchedCertificate(f"no sector with {m} down spins")
        eigs = report.sector(m).eigenvalues
        best = None
        for ei, ev in enumerate(eigs):
            if consumed[m][ei]:
                continue
            dist = abs(complex(ev) - complex(cert.tau_value))
            if best is None or dist < best[1]:
                best = (ei, dist)
        if best is None or best[1] > tol:
            found = "nothing free" if best is None else f"nearest at {best[1]:.3e}"
            raise UnmatchedCertificate(
                f"certificate {ci} (tau={complex(cert.tau_value):.6g}) unmatched, {found}"
            )
        ei, dist = best
        consumed[m][ei] = True
        ev = complex(eigs[ei])
        multiplicity = int(sum(1 for other in eigs if abs(complex(other) - ev) <= degeneracy_tol))
        pairs.append(
            MatchedPair(
                certificate_index=ci,
                sector=m,
                eigenvalue=ev,
                distance=float(dist),
                multiplicity=multiplicity,
            )
        )
    unmatched = tuple(
        (m, complex(ev))
        for m in range(report.n_sites + 1)
        for ei, ev in enumerate(report.sector(m).eigenvalues)
        if not consumed[m][ei]
    )
    return SpectrumMatching(pairs=tuple(pairs), unmatched=unmatched)
