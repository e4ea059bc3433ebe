"""Seeded parameter draws used by the check suites.

All draws go through random.Random so a seed pins the whole stream
across platforms.  Rational draws stay small to keep exact arithmetic
cheap; complex draws stay inside a box that avoids kernel poles.
"""

from __future__ import annotations

from gmpy2 import mpq


def random_rational(rng, max_num=12, max_den=8):
    return mpq(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def distinct_rationals(rng, count, max_num=12, max_den=8, avoid=()):
    """Pairwise-distinct rationals, also distinct from everything in `avoid`."""
    taken = list(avoid)
    out = []
    while len(out) < count:
        x = random_rational(rng, max_num, max_den)
        if all(x != y for y in taken):
            out.append(x)
            taken.append(x)
    return out


def random_complex(rng, re_range=(-1.2, 1.2), im_range=(-0.6, 0.6)):
    return complex(rng.uniform(*re_range), rng.uniform(*im_range))


def distinct_complexes(rng, count, min_sep=0.15, re_range=(-1.2, 1.2),
                       im_range=(-0.6, 0.6), avoid=()):
    """Complex draws separated by at least `min_sep` from each other and `avoid`."""
    taken = list(avoid)
    out = []
    while len(out) < count:
        z = random_complex(rng, re_range, im_range)
        if all(abs(z - w) >= min_sep for w in taken):
            out.append(z)
            taken.append(z)
    return out
