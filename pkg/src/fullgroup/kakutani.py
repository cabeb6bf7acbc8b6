"""Kakutani equivalences between odometer cylinders and the weld of two systems.

A point of a depth-``d`` cylinder ``c`` is written ``c + B_d * y`` with ``y`` in
the tail system.  Cylinder maps here are always tail identifications, possibly
preceded by a power of ``g`` that does not carry out of the working depth, so a
point is tracked as ``(system, depth, code, shift)``: the point
``code + B_depth * (y + shift)`` for a symbolic tail ``y``.

The first return of an odometer to a depth-``d`` cylinder is ``g^{B_d}``, which
acts as ``+1`` on the tail.  Hence a tail identification between cylinders with
equal tail systems conjugates the two first returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .element import Element, validate
from .errors import OverlapError, SystemMismatch, TailMismatch, check
from .odometer import OdometerSystem
from .orbits import analyze


@dataclass(frozen=True)
class Point:
    system: OdometerSystem
    depth: int
    code: int
    shift: int = 0


@dataclass(frozen=True)
class TailIdentify:
    """``c_f + B_{d_f} y  ->  c_t + B_{d_t} y`` between equal tail systems."""

    from_system: OdometerSystem
    from_cyl: tuple  # (depth, code)
    to_system: OdometerSystem
    to_cyl: tuple

    def apply(self, p):
        df, cf = self.from_cyl
        dt, ct = self.to_cyl
        if p.system != self.from_system or p.depth < df:
            raise SystemMismatch("point is not in the identified cylinder")
        size_f = self.from_system.size(df)
        check(p.code % size_f == cf, "point outside the identified cylinder")
        j = p.code // size_f
        return Point(self.to_system, dt + p.depth - df, ct + self.to_system.size(dt) * j, p.shift)


@dataclass(frozen=True)
class Power:
    system: OdometerSystem
    t: int

    def apply(self, p):
        if p.system != self.system:
            raise SystemMismatch("power applied in the wrong system")
        size = self.system.size(p.depth)
        carry, code = divmod(p.code + self.t, size)
        return Point(p.system, p.depth, code, p.shift + carry)


@dataclass(frozen=True)
class KakutaniMap:
    """A program of cylinder-level steps mapping ``source`` onto ``target``."""

    source_system: OdometerSystem
    source: tuple  # (depth, code)
    target_system: OdometerSystem
    target: tuple
    steps: tuple

    def apply(self, p):
        for step in self.steps:
            p = step.apply(p)
        return p

    def source_codes(self, k):
        """Codes of the source cylinder refined ``k`` levels."""
        d, c = self.source
        size = self.source_system.size(d)
        n = self.source_system.size(d + k) // size
        return [c + size * j for j in range(n)]

    def restrict(self, k, j):
        """Restrict to the ``j``-th depth-``(d+k)`` subcylinder of the source."""
        d1, c1 = self.source
        d2, c2 = self.target
        src = (d1 + k, c1 + self.source_system.size(d1) * j)
        tgt = (d2 + k, c2 + self.target_system.size(d2) * j)
        out = KakutaniMap(self.source_system, src, self.target_system, tgt, self.steps)
        verify_conjugation(out)
        return out

    def literal(self):
        s, t = self.source_system, self.target_system
        return f"{s.cylinder_literal(self.source[1], self.source[0])} -> {t.cylinder_literal(self.target[1], self.target[0])}"


def verify_conjugation(kappa, levels=(0, 1, 2)):
    """Exact check of ``kappa (g_1)_{Y_1} = (g_2)_{Y_2} kappa`` on refined cylinders,
    plus the claim that the source cylinder lands exactly on the target."""
    s, t = kappa.source_system, kappa.target_system
    d1, c1 = kappa.source
    d2, c2 = kappa.target
    check(kappa.apply(Point(s, d1, c1)) == Point(t, d2, c2), "map does not send source onto target")
    ret1, ret2 = Power(s, s.size(d1)), Power(t, t.size(d2))
    for k in levels:
        for c in kappa.source_codes(k):
            p = Point(s, d1 + k, c)
            lhs = kappa.apply(ret1.apply(p))
            rhs = ret2.apply(kappa.apply(p))
            check(lhs == rhs, "conjugation property fails")
    return True


def _cyl(system, w):
    if isinstance(w, str):
        return system.parse_cylinder(w)
    return tuple(w)


def canonical_equivalence(sys1, w1, sys2, w2):
    """Tail identification of cylinder ``w1`` of ``sys1`` with ``w2`` of ``sys2``.

    Cylinders are ``(depth, code)`` pairs or literals like ``'[01]'``.
    """
    w1, w2 = _cyl(sys1, w1), _cyl(sys2, w2)
    if sys1.tail(w1[0]) != sys2.tail(w2[0]):
        raise TailMismatch(
            f"tails differ: {sys1.tail(w1[0]).literal()} vs {sys2.tail(w2[0]).literal()}"
        )
    kappa = KakutaniMap(sys1, w1, sys2, w2, (TailIdentify(sys1, w1, sys2, w2),))
    verify_conjugation(kappa)
    return kappa


def compose_equivalences(k12, k23):
    """``kappa_13 = kappa_23 g_2^t kappa_12`` on a subcylinder of the source."""
    if k12.target_system != k23.source_system:
        raise SystemMismatch("middle systems differ")
    sys2 = k12.target_system
    d2, c2 = k12.target
    e2, z2 = k23.source
    e = max(d2, e2)
    ys = set(_refine(sys2, d2, c2, e))
    zs = _refine(sys2, e2, z2, e)
    common = sorted(ys.intersection(zs))
    u, v = (common[0], common[0]) if common else (min(ys), zs[0])
    t = v - u
    # no carry since both codes lie in [0, B_e)
    size_d2, size_e2 = sys2.size(d2), sys2.size(e2)
    first = k12.restrict(e - d2, (u - c2) // size_d2)
    last = k23.restrict(e - e2, (v - z2) // size_e2)
    steps = first.steps + ((Power(sys2, t),) if t else ()) + last.steps
    out = KakutaniMap(first.source_system, first.source, last.target_system, last.target, steps)
    verify_conjugation(out)
    return out


def _refine(system, d, c, e):
    size = system.size(d)
    return [c + size * j for j in range(system.size(e) // size)]


# welding -------------------------------------------------------------------


@dataclass(frozen=True)
class WeldedSystem:
    """Two odometers joined along ``kappa``, tracked on tagged cylinders.

    ``transitions[label] = (label', carry)``: the welded map sends the point
    ``(label, y)`` to ``(label', y + carry)``.  Labels are ``(tag, code)`` with
    tag 1 at depth ``depths[0]`` and tag 2 at ``depths[1]``.  Both components
    share the tail system ``tail``.  The quotient is one cycle of length ``N``
    with total carry 1, so ``(p, y) -> p + N (y + offsets[p])`` conjugates the
    weld to the odometer with bases ``N`` followed by ``tail``.
    """

    components: tuple  # ((tag, system), ...)
    kappa: KakutaniMap | None
    level: int
    depths: tuple
    tail: OdometerSystem
    transitions: dict = field(compare=False)
    order: tuple = ()  # labels along the quotient cycle
    offsets: tuple = ()

    @property
    def N(self):
        return len(self.order)

    @property
    def odometer(self):
        """The odometer conjugate to the welded map."""
        return OdometerSystem((self.N,) + self.tail.preperiod, self.tail.period)

    def position(self):
        return {lab: p for p, lab in enumerate(self.order)}

    def system_of(self, tag):
        return dict(self.components)[tag]

    def label_literal(self, label):
        tag, code = label
        depth = self.depths[tag - 1]
        return f"{tag}:{self.system_of(tag).cylinder_literal(code, depth)}"

    def refine(self, k):
        if k == self.level:
            return self
        return _build(self.components, self.kappa, k)

    def quotient_cycle(self):
        return [self.label_literal(lab) for lab in self.order]


def _build(components, kappa, level):
    if kappa is None:
        (tag, sys), = components
        depth = 1 + level
        size = sys.size(depth)
        trans = {(tag, c): ((tag, (c + 1) % size), (c + 1) // size) for c in range(size)}
        return _finish(components, None, level, (depth,), sys.tail(depth), trans)
    (t1, s1), (t2, s2) = components
    d1, c1 = kappa.source
    d2, c2 = kappa.target
    D1, D2 = d1 + level, d2 + level
    n1, n2 = s1.size(D1), s2.size(D2)
    B1, B2 = s1.size(d1), s2.size(d2)
    trans = {}
    for c in range(n1):
        if c % B1 == c1:
            # g_2 kappa
            img = c2 + B2 * (c // B1) + 1
            trans[(1, c)] = ((2, img % n2), img // n2)
        else:
            trans[(1, c)] = ((1, (c + 1) % n1), (c + 1) // n1)
    for c in range(n2):
        if c % B2 == c2:
            # g_1 (g_1)_{Y_1}^{-1} kappa^{-1}, the inverse first return being g_1^{-B_{d1}}
            img = c1 + B1 * (c // B2) - B1 + 1
            trans[(2, c)] = ((1, img % n1), img // n1)
        else:
            trans[(2, c)] = ((2, (c + 1) % n2), (c + 1) // n2)
    return _finish(components, kappa, level, (D1, D2), s1.tail(D1), trans)


def _finish(components, kappa, level, depths, tail, trans):
    targets = [lab for lab, _ in trans.values()]
    check(len(set(targets)) == len(trans), "welded map is not a bijection on labels")
    start = min(trans)
    order, carries, lab = [], [], start
    while True:
        order.append(lab)
        lab, carry = trans[lab]
        carries.append(carry)
        if lab == start:
            break
    check(len(order) == len(trans), "quotient permutation is not a single cycle")
    check(sum(carries) == 1, "total carry around the quotient cycle is not 1")
    offsets = [0]
    for c in carries[:-1]:
        offsets.append(offsets[-1] - c)
    return WeldedSystem(
        tuple(components), kappa, level, depths, tail, trans, tuple(order), tuple(offsets)
    )


def weld(sys1, sys2=None, kappa=None, depth_cap=64):
    """Weld ``sys1`` and ``sys2`` along ``kappa``; with no ``kappa`` the single
    system is returned in welded form."""
    if kappa is None:
        W = _build(((1, sys1),), None, 0)
        check(induced_on_component(W, 1) == Element.generator(sys1), "first return is not g")
        return W
    if kappa.source_system != sys1 or kappa.target_system != sys2:
        raise SystemMismatch("kappa does not connect the given systems")
    if sys1.tail(kappa.source[0]) != sys2.tail(kappa.target[0]):
        raise TailMismatch("kappa joins cylinders with different tails")
    # g Y and Y are disjoint for every cylinder of depth >= 1
    while min(kappa.source[0], kappa.target[0]) < 1:
        if max(kappa.source[0], kappa.target[0]) + 1 > depth_cap:
            raise OverlapError(f"cannot make g_i Y_i disjoint from Y_i within depth cap {depth_cap}")
        kappa = kappa.restrict(1, 0)
    W = _build(((1, sys1), (2, sys2)), kappa, 0)
    for tag, sys in W.components:
        check(induced_on_component(W, tag) == Element.generator(sys), f"first return to component {tag} is not g")
    # the single-cycle certificate must survive one refinement
    W.refine(1)
    return W


def induced_on_component(W, tag):
    """First return of the welded map to component ``tag``, as an element there."""
    sys = W.system_of(tag)
    depth = W.depths[tag - 1]
    size = sys.size(depth)
    table = [0] * size
    for c in range(size):
        lab, carry = W.transitions[(tag, c)]
        while lab[0] != tag:
            lab, more = W.transitions[lab]
            carry += more
        table[c] = lab[1] - c + size * carry
    return validate(sys, depth, table)


@dataclass(frozen=True)
class WeldedElement:
    welded: WeldedSystem
    labels: tuple  # label literals in quotient order
    exponents: tuple  # G-exponent per label, same order
    element: Element  # on the conjugate odometer, depth 1 code = quotient position

    def table(self):
        return dict(zip(self.labels, self.exponents))


def weld_element(W, spec):
    """Express the map acting as ``spec[i]`` on component ``i`` as a table of
    powers of the welded map."""
    specs = list(spec)
    if len(specs) != len(W.components):
        raise ValueError("one element per component is required")
    for (tag, sys), h in zip(W.components, specs):
        if h.system != sys:
            raise SystemMismatch(f"element for component {tag} is over another system")
    base_depths = [d - W.level for d in W.depths]
    k = max([W.level] + [h.depth - d for h, d in zip(specs, base_depths)])
    W = W.refine(k)
    pos = W.position()
    N = W.N
    out = [0] * N
    for p, (tag, c) in enumerate(W.order):
        h = specs[tag - 1]
        size = W.system_of(tag).size(W.depths[tag - 1])
        n = h.table_at(W.depths[tag - 1])[c]
        carry, code = divmod(c + n, size)
        q = pos[(tag, code)]
        out[p] = q - p + N * (carry + W.offsets[q] - W.offsets[p])
    element = validate(W.odometer, 1, out)
    return WeldedElement(W, tuple(W.quotient_cycle()), tuple(out), element)


def weld_report(W, spec, depth_cap=64):
    we = weld_element(W, spec)
    report = analyze(we.element, depth_cap).as_dict()
    wel = we.welded
    return {
        "welded_odometer": wel.odometer.literal(),
        "quotient_cycle": list(we.labels),
        "carries": [wel.transitions[lab][1] for lab in wel.order],
        "G_table": {lab: n for lab, n in zip(we.labels, we.exponents)},
        "o_plus": report["o_plus"],
        "o_minus": report["o_minus"],
        "m": report["m"],
        "index": report["index"],
        "analysis": report,
    }
