"""Seeded random generation of pure elliptic Sullivan models.

The recipe produces pure models (even generators closed, odd differentials
land in the even subalgebra) with dim V^even = dim V^odd = m <= 3.  Each odd
generator's differential is a pure power of a dedicated even generator plus
extra monomials drawn only from earlier even generators; that triangular
shape forces the cohomology to be finite dimensional, so every sample is
elliptic.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .commutative import Element, Generator
from .sullivan import SullivanModel

_EVEN_DEGREES = (2, 2, 2, 4, 4, 6, 8)  # biased toward low degrees
_MAX_FORMAL_DIM = 10


def random_pure_model(rng: random.Random, name: str = "") -> SullivanModel:
    """Draw one pure elliptic Sullivan model with a small formal dimension."""
    while True:
        m = rng.choice((1, 2, 2, 3))
        even_degs = sorted(rng.choice(_EVEN_DEGREES) for _ in range(m))
        powers = [rng.choice((2, 2, 3)) for _ in range(m)]
        odd_degs = [k * d - 1 for k, d in zip(powers, even_degs)]
        n_c = sum(odd_degs) - sum(d - 1 for d in even_degs)
        if 0 < n_c <= _MAX_FORMAL_DIM:
            break

    gens = [Generator(f"x{j + 1}", even_degs[j], j) for j in range(m)]
    gens += [Generator(f"y{j + 1}", odd_degs[j], m + j) for j in range(m)]
    scratch = SullivanModel(gens, {}, name=name)
    alg = scratch.algebra

    diff: dict[int, Element] = {}
    for j in range(m):
        target = odd_degs[j] + 1  # = powers[j] * even_degs[j]
        img = alg.from_monomial(((j, powers[j]),))
        # extra monomials use only x_1..x_j, keeping the system triangular
        sub_idx = list(range(j))
        for mono in _monomials(even_degs[:j], sub_idx, target):
            if len(mono) == 1 and mono[0][1] == 1:
                continue  # a linear term would break minimality
            if rng.random() < 0.35:
                img = img + alg.from_monomial(mono).scale(
                    Fraction(rng.choice((1, 1, -1, 2))))
        diff[m + j] = img
    return SullivanModel(gens, diff, name=name or f"random_pure_m{m}")


def _monomials(degrees, indices, target):
    """Monomials in the given even generators of exactly the target degree."""
    out = []

    def rec(pos, remaining, acc):
        if remaining == 0:
            if acc:
                out.append(tuple(acc))
            return
        if pos == len(indices):
            return
        d = degrees[pos]
        rec(pos + 1, remaining, acc)
        e = 1
        while e * d <= remaining:
            rec(pos + 1, remaining - e * d, acc + [(indices[pos], e)])
            e += 1

    rec(0, target, [])
    return out


def random_models(seed: int, count: int) -> list[SullivanModel]:
    rng = random.Random(seed)
    return [random_pure_model(rng, name=f"random_{seed}_{i}")
            for i in range(count)]
