"""Shared constructions for the test-suite."""

import itertools
import random

from abgrad import LinearMap, abelian_group, cyclic, hom_make
from abgrad.errors import RelationNotKilled

TARGETS = [cyclic(0), cyclic(2), cyclic(3), cyclic(4), abelian_group(0, (2, 2)), abelian_group(1, (2,))]


def sample_homs(G, k=5, seed=0):
    """``k`` distinct valid homomorphisms out of ``G`` (deterministic)."""
    rng = random.Random(seed)
    found = []
    tries = 0
    while len(found) < k and tries < 2000:
        tries += 1
        H = rng.choice(TARGETS)
        images = [[rng.randint(-3, 3) for _ in range(H.rank)] for _ in range(G.rank)]
        try:
            rho = hom_make(G, H, images)
        except RelationNotKilled:
            continue
        if rho not in found:
            found.append(rho)
    return found


def all_small_homs(G, H, bound=2):
    out = []
    ranges = [range(-bound, bound + 1)] * H.rank
    cands = [list(c) for c in itertools.product(*ranges)]
    for imgs in itertools.product(cands, repeat=G.rank):
        try:
            out.append(hom_make(G, H, list(imgs)))
        except RelationNotKilled:
            continue
    return out


def sl2_swap(A):
    return LinearMap.from_images(A, A, [[-1, 0, 0], [0, 0, 1], [0, 1, 0]])


def sl2_exp_ad_e(A, t):
    """``exp(t ad E)``: H -> H - 2tE, E -> E, F -> F + tH - t^2 E."""
    F = A.field
    t = F(t) if not hasattr(t, "field") else t
    return LinearMap.from_images(A, A, [[1, -2 * t, 0], [0, 1, 0], [t, -t * t, 1]])
