"""Decompositions of Bethe vectors over contiguous subchains.

The two-component and multi-component sums express a full-chain Bethe
vector through subchain Bethe vectors weighted by subchain vacuum
eigenvalues and kernel factors.  Pushing the number of components to
the chain length resolves the vector into single-site flips, and on a
homogeneous chain the placement sum collapses to powers of one local
weight ratio.  Every formula here reproduces formal_bethe_vector, which
is what decomposition_report certifies.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial

import numpy as np
from gmpy2 import mpq

from .bethe import formal_bethe_vector, spectral_values
from .chain import (
    local_alpha,
    local_delta,
    partial_monodromy,
    pseudovacuum,
    vacuum_eigenvalues,
)
from .errors import HomogeneousOnly, InvalidRange, VanishingLocalEigenvalue
from .linalg import rel_max_diff, zeros_vector
from .rmatrix import RATIONAL, kernel_f
from .scalars import EXACT, POLE_THRESHOLD, sinh_value


@dataclass(frozen=True)
class Split:
    """A partition of sites 1..n_sites into contiguous blocks by cut positions."""

    n_sites: int
    cuts: tuple

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cuts)
        if list(cuts) != sorted(set(cuts)):
            raise InvalidRange("cut positions must be strictly increasing")
        if cuts and not (1 <= cuts[0] and cuts[-1] <= self.n_sites - 1):
            raise InvalidRange(f"cuts {cuts} outside 1..{self.n_sites - 1}")
        object.__setattr__(self, "cuts", cuts)

    @classmethod
    def bipartition(cls, n_sites, x):
        return cls(n_sites, (x,))

    @property
    def k(self):
        return len(self.cuts) + 1

    @property
    def ranges(self):
        bounds = (0,) + self.cuts + (self.n_sites,)
        return [(bounds[i] + 1, bounds[i + 1]) for i in range(len(bounds) - 1)]


def all_splits(n_sites, k):
    """Every split of 1..n_sites into k contiguous blocks."""
    for cuts in combinations(range(1, n_sites), k - 1):
        yield Split(n_sites, cuts)


def enumerate_ordered_partitions(m, k):
    """Assignments of m elements to k ordered blocks, base-k counting order.

    Element i lands in block (code // k**i) % k; blocks come back as
    tuples of increasing element indices, empty blocks allowed.
    """
    for code in range(k ** m):
        blocks = [[] for _ in range(k)]
        c = code
        for i in range(m):
            blocks[c % k].append(i)
            c //= k
        yield tuple(tuple(b) for b in blocks)


def enumerate_bipartitions(m):
    """Two-block specialization: pairs (J, J complement) in counting order."""
    for blocks in enumerate_ordered_partitions(m, 2):
        yield blocks[0], blocks[1]


def _subchain_data(spec, split, vals):
    """Per-subchain vacuum products, B blocks and pseudovacua for each root."""
    data = []
    for first, last in split.ranges:
        vac = pseudovacuum(last - first + 1, spec.mode)
        b_ops = [partial_monodromy(spec, lam, first, last).b for lam in vals]
        a_vals = []
        d_vals = []
        for lam in vals:
            a, d = vacuum_eigenvalues(spec, lam, first, last)
            a_vals.append(a)
            d_vals.append(d)
        data.append({"vac": vac, "b": b_ops, "a": a_vals, "d": d_vals})
    return data


def _apply_bs(block_data, elements):
    v = block_data["vac"]
    for k in reversed(elements):
        v = block_data["b"][k] @ v
    return v


def two_component_vector(spec, split, lambdas):
    """Bipartition sum for the Bethe vector over a two-block split.

    Each subset J of roots contributes the kernel factors f(J, complement),
    the second-subchain d weights on J, the first-subchain a weights on
    the complement, and the product of the two subchain Bethe vectors.
    """
    if split.k != 2:
        raise InvalidRange(f"two-component split needs 2 blocks, got {split.k}")
    if split.n_sites != spec.n_sites:
        raise InvalidRange("split length differs from chain length")
    vals = spectral_values(spec, lambdas)
    data = _subchain_data(spec, split, vals)
    one = mpq(1) if spec.mode == EXACT else 1.0 + 0.0j
    out = zeros_vector(spec.dim, spec.mode)
    for j_set, j_bar in enumerate_bipartitions(len(vals)):
        coeff = one
        for k1 in j_set:
            for k2 in j_bar:
                coeff = coeff * kernel_f(spec.kernel, vals[k1], vals[k2])
        for k1 in j_set:
            coeff = coeff * data[1]["d"][k1]
        for k2 in j_bar:
            coeff = coeff * data[0]["a"][k2]
        term = np.kron(_apply_bs(data[0], j_set), _apply_bs(data[1], j_bar))
        out = out + term * coeff
    return out


def multi_component_vector(spec, split, lambdas, max_block_size=None):
    """Ordered-partition sum for the Bethe vector over a k-block split.

    A root assigned to block b picks up the a weights of every earlier
    subchain and the d weights of every later one; root pairs in
    distinct blocks pick up one kernel factor ordered by block.  Setting
    max_block_size skips assignments with larger blocks, which is exact
    once blocks are single sites since local flips square to zero.
    """
    if split.n_sites != spec.n_sites:
        raise InvalidRange("split length differs from chain length")
    vals = spectral_values(spec, lambdas)
    data = _subchain_data(spec, split, vals)
    k = split.k
    one = mpq(1) if spec.mode == EXACT else 1.0 + 0.0j
    out = zeros_vector(spec.dim, spec.mode)
    for blocks in enumerate_ordered_partitions(len(vals), k):
        if max_block_size is not None and any(len(b) > max_block_size for b in blocks):
            continue
        coeff = one
        for b1 in range(k):
            for b2 in range(b1 + 1, k):
                for k1 in blocks[b1]:
                    for k2 in blocks[b2]:
                        coeff = coeff * kernel_f(spec.kernel, vals[k1], vals[k2])
        for b, members in enumerate(blocks):
            for kk in members:
                for i in range(b):
                    coeff = coeff * data[i]["a"][kk]
                for i in range(b + 1, k):
                    coeff = coeff * data[i]["d"][kk]
        term = _apply_bs(data[0], blocks[0])
        for b in range(1, k):
            term = np.kron(term, _apply_bs(data[b], blocks[b]))
        out = out + term * coeff
    return out


def _local_hop(spec):
    if spec.kernel.kind == RATIONAL:
        return mpq(1) if spec.mode == EXACT else 1.0 + 0.0j
    return sinh_value(spec.kernel.eta)


def local_structure_vector(spec, lambdas):
    """Fully resolved placement sum: one term per flip pattern and root order.

    Positions n_1 < ... < n_M receive the roots in every order; a root
    at position n carries the alpha weights of all earlier sites and the
    delta weights of all later ones, and ordered root pairs carry one
    kernel factor.  Exactly C(N, M) M! terms.
    """
    vals = spectral_values(spec, lambdas)
    m = len(vals)
    n = spec.n_sites
    out = zeros_vector(spec.dim, spec.mode)
    one = mpq(1) if spec.mode == EXACT else 1.0 + 0.0j
    hop = _local_hop(spec)
    for positions in combinations(range(1, n + 1), m):
        index = sum(1 << (n - p) for p in positions)
        for order in permutations(range(m)):
            w = one
            for slot, p in enumerate(positions):
                lam = vals[order[slot]]
                for i in range(1, p):
                    w = w * local_alpha(spec, lam, i)
                for j in range(p + 1, n + 1):
                    w = w * local_delta(spec, lam, j)
            for s1 in range(m):
                for s2 in range(s1 + 1, m):
                    w = w * kernel_f(spec.kernel, vals[order[s1]], vals[order[s2]])
            for _ in range(m):
                w = w * hop
            out[index] = out[index] + w
    return out


def homogeneous_coordinate_vector(spec, lambdas):
    """Closed placement sum for a homogeneous chain via one weight ratio.

    With every site equal, a placement's weight is the global prefactor
    delta^N / alpha per root times the ratio (alpha/delta) raised to the
    flip positions, so the sum needs only powers of a single scalar.
    """
    if not spec.homogeneous:
        raise HomogeneousOnly("inhomogeneous chain has no single-site closed form")
    vals = spectral_values(spec, lambdas)
    m = len(vals)
    n = spec.n_sites
    one = mpq(1) if spec.mode == EXACT else 1.0 + 0.0j
    hop = _local_hop(spec)
    alphas = [local_alpha(spec, lam, 1) for lam in vals]
    deltas = [local_delta(spec, lam, 1) for lam in vals]
    for lam, a, d in zip(vals, alphas, deltas):
        bad = (a == 0 or d == 0) if spec.mode == EXACT else (
            abs(a) < POLE_THRESHOLD or abs(d) < POLE_THRESHOLD
        )
        if bad:
            raise VanishingLocalEigenvalue(f"local weight vanishes at root {lam}")
    prefactor = one
    for a, d in zip(alphas, deltas):
        dn = one
        for _ in range(n):
            dn = dn * d
        prefactor = prefactor * dn / a
    ratios = [a / d for a, d in zip(alphas, deltas)]
    out = zeros_vector(spec.dim, spec.mode)
    for positions in combinations(range(1, n + 1), m):
        index = sum(1 << (n - p) for p in positions)
        acc = out[index]
        for order in permutations(range(m)):
            w = one
            for slot, p in enumerate(positions):
                r = ratios[order[slot]]
                for _ in range(p):
                    w = w * r
            for s1 in range(m):
                for s2 in range(s1 + 1, m):
                    w = w * kernel_f(spec.kernel, vals[order[s1]], vals[order[s2]])
            acc = acc + w
        out[index] = acc
    hops = one
    for _ in range(m):
        hops = hops * hop
    return out * (prefactor * hops)


@dataclass(frozen=True)
class DecompositionRow:
    """One certified formula evaluation inside a report."""

    formula: str
    cuts: tuple | None
    term_count: int
    residual: object
    error: str | None
    seconds: float


def decomposition_report(spec, lambdas, splits=(), include_homogeneous=None):
    """Evaluate every requested decomposition against the formal vector.

    Rows come in a fixed order: two-component rows for the two-block
    splits, multi-component rows for every split, the local placement
    sum, and the homogeneous closed form when the chain is homogeneous
    (or when explicitly requested, in which case an inhomogeneous chain
    yields an error row).  Residuals are max-norm differences relative
    to the formal Bethe vector.
    """
    vals = spectral_values(spec, lambdas)
    m = len(vals)
    reference = formal_bethe_vector(spec, vals)
    if include_homogeneous is None:
        include_homogeneous = spec.homogeneous
    rows = []

    def run(formula, cuts, count, thunk):
        start = time.perf_counter()
        try:
            candidate = thunk()
            residual = rel_max_diff(candidate, reference)
            error = None
        except Exception as exc:  # recorded, not raised
            residual = None
            error = str(exc)
        rows.append(
            DecompositionRow(
                formula=formula,
                cuts=cuts,
                term_count=count,
                residual=residual,
                error=error,
                seconds=time.perf_counter() - start,
            )
        )

    splits = list(splits)
    for split in splits:
        if split.k == 2:
            run(
                "two_component",
                split.cuts,
                2 ** m,
                lambda s=split: two_component_vector(spec, s, vals),
            )
    for split in splits:
        run(
            "multi_component",
            split.cuts,
            split.k ** m,
            lambda s=split: multi_component_vector(spec, s, vals),
        )
    placement_count = comb(spec.n_sites, m) * factorial(m)
    run("local_structure", None, placement_count, lambda: local_structure_vector(spec, vals))
    if include_homogeneous:
        run(
            "homogeneous_coordinate",
            None,
            placement_count,
            lambda: homogeneous_coordinate_vector(spec, vals),
        )
    return rows
