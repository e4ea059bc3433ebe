import numpy as np
import pytest

from bethekit.bethe import BetheCertificate, solve_bethe
from bethekit.chain import ChainSpec
from bethekit.errors import (
    DimensionCapExceeded,
    ExactModeUnsupported,
    UnmatchedCertificate,
)
from bethekit.oracle import (
    dense_spectrum,
    down_spin_count,
    match_bethe_to_spectrum,
    sector_indices,
)


def test_down_spin_count():
    assert down_spin_count(0) == 0
    assert down_spin_count(0b1011) == 3


def test_sector_indices():
    assert sector_indices(2, 0) == (0,)
    assert sector_indices(2, 1) == (1, 2)
    assert sector_indices(2, 2) == (3,)
    for m in range(5):
        assert all(down_spin_count(i) == m for i in sector_indices(4, m))


def test_dense_spectrum_preconditions():
    with pytest.raises(ExactModeUnsupported):
        dense_spectrum(ChainSpec.xxx(2, 0), 1.0)
    with pytest.raises(DimensionCapExceeded):
        dense_spectrum(ChainSpec.xxx(13, 0, mode="float"), 1.0)


def test_dense_spectrum_frozen_two_sites():
    spec = ChainSpec.xxx(2, 0, mode="float")
    report = dense_spectrum(spec, 1.0)
    assert report.off_sector_residual == 0
    assert np.allclose(report.sector(0).eigenvalues, [5.0])
    assert np.allclose(report.sector(1).eigenvalues, [3.0, 5.0])
    assert np.allclose(report.sector(2).eigenvalues, [5.0])
    assert report.sector_labels == [0, 1, 1, 2]


def test_dense_spectrum_sector_sizes():
    from math import comb

    spec = ChainSpec.xxx(4, [0.1, -0.2, 0.3, 0.05], mode="float")
    report = dense_spectrum(spec, 0.7 + 0.4j)
    for m in range(5):
        sector = report.sector(m)
        assert len(sector.indices) == comb(4, m)
        assert len(sector.eigenvalues) == comb(4, m)
    assert report.off_sector_residual < 1e-14


def test_dense_spectrum_eigenpairs_validate():
    spec = ChainSpec.xxx(3, [0.1, -0.4, 0.25], mode="float")
    mu = 0.6 + 0.3j
    report = dense_spectrum(spec, mu)
    from bethekit.bethe import transfer_matrix

    tmat = np.asarray(transfer_matrix(spec, mu), dtype=complex)
    for sector in report.sectors:
        block = tmat[np.ix_(sector.indices, sector.indices)]
        for w, v in zip(sector.eigenvalues, sector.eigenvectors.T):
            assert np.max(np.abs(block @ v - w * v)) < 1e-10


def test_match_bethe_to_spectrum():
    spec = ChainSpec.xxx(2, 0, mode="float")
    result = solve_bethe(spec, 1, seed=7, probe=1.0)
    report = dense_spectrum(spec, 1.0)
    matching = match_bethe_to_spectrum(report, result.certificates, tol=1e-9)
    assert len(matching.pairs) == 1
    pair = matching.pairs[0]
    assert pair.sector == 1
    assert abs(pair.eigenvalue - 3.0) < 1e-12
    assert pair.distance < 1e-10
    assert pair.multiplicity == 1
    # 5 appears in three sectors, all reported unmatched
    assert len(matching.unmatched) == 3
    assert all(abs(ev - 5.0) < 1e-12 for _, ev in matching.unmatched)


def test_match_rejects_unknown_tau():
    spec = ChainSpec.xxx(2, 0, mode="float")
    report = dense_spectrum(spec, 1.0)
    fake = BetheCertificate(
        roots=(0.25 + 0j,),
        bethe_residuals=(0.0,),
        eigen_residual=0.0,
        tau_value=999.0 + 0j,
        probe_mu=1.0 + 0j,
    )
    with pytest.raises(UnmatchedCertificate):
        match_bethe_to_spectrum(report, [fake], tol=1e-9)


def test_match_rejects_probe_mismatch():
    spec = ChainSpec.xxx(2, 0, mode="float")
    report = dense_spectrum(spec, 1.0)
    cert = BetheCertificate(
        roots=(-0.5 + 0j,),
        bethe_residuals=(0.0,),
        eigen_residual=0.0,
        tau_value=3.0 + 0j,
        probe_mu=2.0 + 0j,
    )
    with pytest.raises(ValueError):
        match_bethe_to_spectrum(report, [cert])
