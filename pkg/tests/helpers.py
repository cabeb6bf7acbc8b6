"""Random generators shared by the test modules."""

import random

from hypothesis import strategies as st

from fullgroup.element import Element, induced_generator, validate
from fullgroup.odometer import ClopenSet, OdometerSystem

DYADIC = OdometerSystem()
SYSTEMS = [
    DYADIC,
    OdometerSystem((2,), (3,)),
    OdometerSystem((), (3,)),
    OdometerSystem((), (2, 3)),
]


def depth_for(system, max_size, max_depth=8):
    d = 0
    while d < max_depth and system.size(d + 1) <= max_size:
        d += 1
    return d


def random_element(rng, system, max_size=64, spread=1):
    """Random permutation of codes lifted by random multiples of ``B_D``."""
    depth = rng.randint(0, depth_for(system, max_size))
    size = system.size(depth)
    perm = list(range(size))
    rng.shuffle(perm)
    table = [perm[w] - w + size * rng.randint(-spread, spread) for w in range(size)]
    return validate(system, depth, table)


def random_clopen(rng, system, max_depth=3):
    depth = rng.randint(0, max_depth)
    size = system.size(depth)
    codes = [c for c in range(size) if rng.random() < 0.5] or [rng.randrange(size)]
    return ClopenSet.make(system, depth, codes)


def random_finite_order(rng, system, max_size=64, spread=1):
    """Each sigma-cycle gets lifts summing to zero, so every orbit is finite."""
    depth = rng.randint(0, depth_for(system, max_size))
    size = system.size(depth)
    perm = list(range(size))
    rng.shuffle(perm)
    lifts = [0] * size
    seen = set()
    for w0 in range(size):
        if w0 in seen:
            continue
        cyc, w = [], w0
        while w not in seen:
            seen.add(w)
            cyc.append(w)
            w = perm[w]
        ks = [rng.randint(-spread, spread) for _ in cyc]
        ks[-1] -= sum(ks)
        for w, k in zip(cyc, ks):
            lifts[w] = k
    return validate(system, depth, [perm[w] - w + size * lifts[w] for w in range(size)])


def random_positive(rng, system, max_size=32):
    """A product of induced generators conjugated by a random element."""
    p = Element.identity(system)
    for _ in range(rng.randint(1, 3)):
        p = induced_generator(random_clopen(rng, system, 2)) * p
    c = random_element(rng, system, max_size=16)
    return p.conjugate(c)


def seeded(seed):
    return random.Random(seed)


# hypothesis strategies -------------------------------------------------------

systems = st.sampled_from(SYSTEMS)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def elements(draw, system=None, max_size=36, spread=1):
    sys_ = system or draw(systems)
    return random_element(random.Random(draw(seeds)), sys_, max_size, spread)


@st.composite
def element_pairs(draw, max_size=36):
    sys_ = draw(systems)
    rng = random.Random(draw(seeds))
    return random_element(rng, sys_, max_size), random_element(rng, sys_, max_size)


@st.composite
def clopens(draw, system=None, nonempty=True):
    sys_ = system or draw(systems)
    A = random_clopen(random.Random(draw(seeds)), sys_)
    if not nonempty and draw(st.booleans()):
        return ClopenSet.empty(sys_)
    return A


@st.composite
def positives(draw):
    return random_positive(random.Random(draw(seeds)), draw(systems))


@st.composite
def finite_orders(draw):
    return random_finite_order(random.Random(draw(seeds)), draw(systems))
