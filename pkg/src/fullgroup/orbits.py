"""Cycle graphs, sign and minimal-periodic partitions, orbit numbers, index.

Everything here rests on one finite fact.  Let ``sigma(w) = w + n_w mod B_D``
and let ``C`` be a sigma-cycle of length ``L`` with exponent sum ``S``.  For a
point ``x = w + B_D*y`` (``y`` the tail) one has ``h^L x = x + S``, so
``B_D | S`` and the first return of ``h`` to the cylinder ``w`` is ``+m`` on the
tail with ``m = S / B_D``.  Consequently:

* ``S == 0``: every point of ``C`` has period exactly ``L``;
* ``S > 0`` / ``S < 0``: every point drifts to ``+inf`` / ``-inf``, so the
  cylinder-level classification at the native depth is already exact;
* the tower over ``C`` meets each ``g``-orbit in exactly ``|m|`` ``h``-orbits.

One level deeper (base ``b``) such a cycle lifts to ``gcd(|m|, b)`` cycles of
multiplier ``m / gcd(|m|, b)``; a cycle whose ``|m|`` is coprime to every later
base is a single minimal component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .element import Element
from .errors import DepthOverflow, check
from .odometer import ClopenSet

DEFAULT_DEPTH_CAP = 64

PERIODIC, POSITIVE, NEGATIVE = "periodic", "positive", "negative"


@dataclass(frozen=True)
class Cycle:
    members: tuple  # codes in traversal order, starting at the least one
    weight: int  # exponent sum S
    size: int  # B_D at the cycle's depth

    @property
    def length(self):
        return len(self.members)

    @property
    def kind(self):
        if self.weight == 0:
            return PERIODIC
        return POSITIVE if self.weight > 0 else NEGATIVE

    @property
    def multiplier(self):
        """``S / B_D``; zero on periodic cycles."""
        return self.weight // self.size


@dataclass(frozen=True)
class CycleGraph:
    element: Element
    depth: int
    permutation: tuple
    cycles: tuple

    def of_kind(self, kind):
        return [c for c in self.cycles if c.kind == kind]

    def part(self, kind):
        codes = [w for c in self.of_kind(kind) for w in c.members]
        return ClopenSet.make(self.element.system, self.depth, codes)

    def cycle_of(self):
        """Map code -> index of its cycle."""
        out = {}
        for i, c in enumerate(self.cycles):
            for w in c.members:
                out[w] = i
        return out


def _trace_cycles(perm, table, size, start_codes):
    """Cycles of ``perm`` through ``start_codes`` (which must be a union of cycles)."""
    seen = set()
    out = []
    for w0 in sorted(start_codes):
        if w0 in seen:
            continue
        members, total, w = [], 0, w0
        while w not in seen:
            seen.add(w)
            members.append(w)
            total += table[w]
            w = perm[w]
        check(w == w0, "permutation trace left its starting cycle")
        out.append(Cycle(tuple(members), total, size))
    return out


def cycle_graph(h, depth=None):
    """Cycle decomposition of the code permutation of ``h`` at ``depth``."""
    depth = h.depth if depth is None else depth
    size = h.system.size(depth)
    table = h.table_at(depth)
    perm = [(w + n) % size for w, n in enumerate(table)]
    cycles = _trace_cycles(perm, table, size, range(size))
    for c in cycles:
        check(c.weight % size == 0, "cycle weight not divisible by B_D")
    return CycleGraph(h, depth, tuple(perm), tuple(cycles))


# sign partition ------------------------------------------------------------


@dataclass(frozen=True)
class SignPartition:
    X_p: ClopenSet
    X_plus: ClopenSet
    X_minus: ClopenSet
    h_p: Element
    h_plus: Element
    h_minus: Element


def sign_partition(h):
    """``h = h_p h_plus h_minus`` with periodic, positive and negative parts."""
    cg = cycle_graph(h)
    X_p, X_plus, X_minus = cg.part(PERIODIC), cg.part(POSITIVE), cg.part(NEGATIVE)
    sp = SignPartition(X_p, X_plus, X_minus, h.restrict(X_p), h.restrict(X_plus), h.restrict(X_minus))
    check(sp.h_p * sp.h_plus * sp.h_minus == h, "sign partition does not recompose")
    return sp


def is_positive(h):
    """Every ``h``-orbit is positive: no negative drift and no nontrivial finite orbits."""
    cg = cycle_graph(h)
    return all(c.kind == POSITIVE or (c.kind == PERIODIC and c.length == 1) for c in cg.cycles)


# minimal-periodic partition --------------------------------------------------


@dataclass(frozen=True)
class Component:
    """A minimal aperiodic component: a sigma-cycle at ``depth`` that no longer splits."""

    depth: int
    members: tuple
    weight: int
    size: int

    @property
    def multiplier(self):
        return self.weight // self.size

    @property
    def kind(self):
        return POSITIVE if self.weight > 0 else NEGATIVE


@dataclass(frozen=True)
class MinimalPeriodicPartition:
    periodic: tuple  # ((n, X_p(n)), ...) sorted by n
    components: tuple  # ClopenSets X_a(i)
    component_data: tuple = field(compare=False, default=())

    @property
    def m(self):
        return len(self.components)

    def periodic_part(self, n):
        for k, part in self.periodic:
            if k == n:
                return part
        return None


def _split_cycle(h, cycle, depth, cap):
    """Refine an aperiodic cycle until every piece is a minimal component."""
    system = h.system
    out = []
    stack = [(depth, cycle.members, cycle.weight)]
    while stack:
        d, members, weight = stack.pop()
        size = system.size(d)
        m = weight // size
        if system.coprime_to_future(abs(m), d):
            out.append(Component(d, tuple(members), weight, size))
            continue
        if d + 1 > cap:
            raise DepthOverflow(f"minimal component refinement exceeded depth cap {cap}")
        new_size = system.size(d + 1)
        b = new_size // size
        children = [w + size * j for w in members for j in range(b)]
        # the table is constant on children of the element's native cylinders
        native = h.size
        table = {c: h.table[c % native] for c in children}
        perm = {c: (c + table[c]) % new_size for c in children}
        lifted = _trace_cycles(perm, table, new_size, children)
        check(len(lifted) == gcd(abs(m), b), "gcd splitting rule violated")
        for c in lifted:
            stack.append((d + 1, c.members, c.weight))
    return out


def minimal_periodic_partition(h, depth_cap=DEFAULT_DEPTH_CAP):
    cg = cycle_graph(h)
    system = h.system
    by_period = {}
    for c in cg.of_kind(PERIODIC):
        by_period.setdefault(c.length, []).extend(c.members)
    periodic = tuple(
        (n, ClopenSet.make(system, cg.depth, codes)) for n, codes in sorted(by_period.items())
    )
    comps = []
    for c in cg.cycles:
        if c.kind != PERIODIC:
            comps.extend(_split_cycle(h, c, cg.depth, max(depth_cap, cg.depth)))
    sets = [ClopenSet.make(system, comp.depth, comp.members) for comp in comps]
    # order components by their least code at a common depth
    deepest = max((s.depth for s in sets), default=0)
    order = sorted(range(len(sets)), key=lambda i: sets[i].codes_at(deepest)[0])
    return MinimalPeriodicPartition(
        periodic, tuple(sets[i] for i in order), tuple(comps[i] for i in order)
    )


def component_count(h):
    return minimal_periodic_partition(h).m


# orbit numbers and index ------------------------------------------------------


def orbit_numbers(h):
    """``(o_plus, o_minus)``: positive / negative nontrivial orbits per ``g``-orbit."""
    cg = cycle_graph(h)
    o_plus = sum(c.multiplier for c in cg.of_kind(POSITIVE))
    o_minus = sum(-c.multiplier for c in cg.of_kind(NEGATIVE))
    return o_plus, o_minus


def orbit_number(h):
    return sum(orbit_numbers(h))


def index(h):
    """The index map: total exponent over ``B_D``, cross-checked against ``o+ - o-``."""
    total = sum(h.table)
    check(total % h.size == 0, "exponent sum not divisible by B_D")
    value = total // h.size
    o_plus, o_minus = orbit_numbers(h)
    check(value == o_plus - o_minus, "index differs from o+ - o-")
    return value


def empirical_index(h, start, l):
    """Average of ``c_{g,h}`` over ``g^{start+1} x0, ..., g^{start+l} x0``."""
    if l < 1:
        raise ValueError("l must be positive")
    size = h.size
    table = h.table
    full, rest = divmod(l, size)
    total = full * sum(table)
    total += sum(table[(start + j) % size] for j in range(1, rest + 1))
    return Fraction(total, l)


def meets_every_infinite_orbit(h, A, orientation=None):
    """Whether ``A`` meets every aperiodic minimal component (optionally only
    those of one orientation, ``'+'`` or ``'-'``)."""
    mpp = minimal_periodic_partition(h)
    want = {None: None, "+": POSITIVE, "-": NEGATIVE}[orientation]
    for part, comp in zip(mpp.components, mpp.component_data):
        if want is not None and comp.kind != want:
            continue
        if part.intersect(A).is_empty():
            return False
    return True


@dataclass(frozen=True)
class AnalysisReport:
    element: Element
    cycle_graph: CycleGraph
    sign: SignPartition
    mpp: MinimalPeriodicPartition
    o_plus: int
    o_minus: int
    index: int

    def as_dict(self):
        cg = self.cycle_graph
        sys = self.element.system
        return {
            "element": self.element.serialize(),
            "system": sys.literal(),
            "depth": cg.depth,
            "cycles": [
                {
                    "members": [sys.cylinder_literal(w, cg.depth) for w in c.members],
                    "length": c.length,
                    "S": c.weight,
                    "m": c.multiplier,
                    "class": c.kind,
                }
                for c in cg.cycles
            ],
            "sign_partition": {
                "X_p": self.sign.X_p.literal(),
                "X_plus": self.sign.X_plus.literal(),
                "X_minus": self.sign.X_minus.literal(),
            },
            "periodic_parts": {str(n): part.literal() for n, part in self.mpp.periodic},
            "components": [c.literal() for c in self.mpp.components],
            "o_plus": self.o_plus,
            "o_minus": self.o_minus,
            "m": self.mpp.m,
            "index": self.index,
        }


def analyze(h, depth_cap=DEFAULT_DEPTH_CAP):
    o_plus, o_minus = orbit_numbers(h)
    return AnalysisReport(
        h, cycle_graph(h), sign_partition(h), minimal_periodic_partition(h, depth_cap),
        o_plus, o_minus, index(h),
    )
