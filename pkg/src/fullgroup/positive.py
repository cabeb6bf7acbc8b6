"""Strongly positive domains, the strongly positive form and its conjugator.

``pi_>(h)`` sends a point of an infinite ``h``-orbit to the nearest point of
the same orbit strictly to its right along the ``g``-orbit, and fixes points
of finite orbits.  On a sigma-cycle with partial sums ``P_r`` (``0 <= r < L``)
and weight ``S != 0`` the offsets of the orbit are exactly ``P_r + j*S``, so
the exponent of ``pi_>(h)`` on the cylinder is ``min_r ((P_r - 1) mod |S|) + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .element import Element
from .errors import NotPositive, check
from .odometer import ClopenSet
from .orbits import PERIODIC, cycle_graph, is_positive, minimal_periodic_partition, sign_partition


def _partial_sums(table, perm, w, steps):
    out, total = [0], 0
    for _ in range(steps - 1):
        total += table[w]
        w = perm[w]
        out.append(total)
    return out


def _require_positive(h):
    if not is_positive(h):
        raise NotPositive("element has negative drift or a nontrivial finite orbit")


def strongly_positive_domain(h, orientation="+"):
    """``Y_+ = {x : c_{g,h^n}(x) >= 0 for all n >= 0}`` (``'+'``) or
    ``Y_- = {x : c_{g,h^-n}(x) <= 0 for all n >= 0}`` (``'-'``) for positive ``h``.

    Positive drift makes one loop of each cycle enough.
    """
    _require_positive(h)
    cg = cycle_graph(h)
    table = h.table
    perm = list(cg.permutation)
    inv = [0] * len(perm)
    for w, v in enumerate(perm):
        inv[v] = w
    codes = []
    for c in cg.cycles:
        for w in c.members:
            if orientation == "+":
                ok = min(_partial_sums(table, perm, w, c.length)) >= 0
            else:
                total, v, ok = 0, w, True
                for _ in range(c.length - 1):
                    v = inv[v]
                    total -= table[v]
                    if total > 0:
                        ok = False
                        break
            if ok:
                codes.append(w)
    return ClopenSet.make(h.system, h.depth, codes)


def positive_form(h):
    """``pi_>(h)``: the strongly positive element with the same infinite orbits
    as ``h`` that fixes every ``h``-periodic point."""
    cg = cycle_graph(h)
    table = h.table
    perm = cg.permutation
    out = [0] * h.size
    for c in cg.cycles:
        if c.kind == PERIODIC:
            continue
        s = abs(c.weight)
        for w in c.members:
            out[w] = min((p - 1) % s + 1 for p in _partial_sums(table, perm, w, c.length))
    h_gt = Element._trusted(h.system, h.depth, out)
    check(h_gt.is_strongly_positive(), "positive form has a negative exponent")
    return h_gt


def positive_form_by_window(h):
    """The same map by brute enumeration of ``c_{g,h^k}`` over a drift-bounded
    window of ``k``; kept as an independent cross-check of :func:`positive_form`."""
    cg = cycle_graph(h)
    table, perm = h.table, cg.permutation
    inv = [0] * len(perm)
    for w, v in enumerate(perm):
        inv[v] = w
    out = [0] * h.size
    norm = h.norm()
    for c in cg.cycles:
        if c.kind == PERIODIC:
            continue
        L, S = c.length, abs(c.weight)
        bound = L * norm
        window = L * (-(-(bound + L * norm) // S) + 1)
        for w in c.members:
            best = None
            total, v = 0, w
            for _ in range(window):
                total += table[v]
                v = perm[v]
                if total > 0 and (best is None or total < best):
                    best = total
            total, v = 0, w
            for _ in range(window):
                v = inv[v]
                total -= table[v]
                if total > 0 and (best is None or total < best):
                    best = total
            out[w] = best
    return Element._trusted(h.system, h.depth, out)


def canonical_conjugator(h):
    """``k`` strongly positive with ``h = k pi_>(h) k^{-1}``, fixing a clopen set
    that meets every minimal component.

    ``delta(w, t) = c_{g,h^t}(w) - c_{g,h'^t}(w)`` is ``L``-periodic in ``t`` on a
    cycle of length ``L``; ``Z`` is where it is nonnegative for all ``t``, and
    ``k = h^s h'^{-s}`` on ``h'^s Z`` for the least such ``s >= 0``.
    """
    _require_positive(h)
    h_gt = positive_form(h)
    d = h.depth
    size = h.size
    th, tp = h.table, h_gt.table_at(d)
    ph = [(w + n) % size for w, n in enumerate(th)]
    pp = [(w + n) % size for w, n in enumerate(tp)]
    inv_pp = [0] * size
    for w, v in enumerate(pp):
        inv_pp[v] = w
    k = [0] * size
    for c in cycle_graph(h).cycles:
        if c.kind == PERIODIC:
            continue
        L = c.length
        deltas = {}
        for w in c.members:
            a = _partial_sums(th, ph, w, L + 1)
            b = _partial_sums(tp, pp, w, L + 1)
            check(a[L] == b[L], "drift of h and pi_>(h) differ on a cycle")
            deltas[w] = [x - y for x, y in zip(a, b)]
        Z = {w for w, ds in deltas.items() if min(ds) >= 0}
        check(bool(Z), "no cylinder with nonnegative deviation on a cycle")
        for w in c.members:
            z, s = w, 0
            while z not in Z:
                z = inv_pp[z]
                s += 1
            check(s < L, "deviation minimum not reached within one loop")
            k[w] = deltas[z][s]
    kk = Element._trusted(h.system, d, k)
    check(kk.is_strongly_positive(), "conjugator has a negative exponent")
    check(h_gt.conjugate(kk) == h, "h != k pi_>(h) k^-1")
    return kk


def fixed_points_meet_components(k, h_gt):
    fixed = k.fixed_set()
    mpp = minimal_periodic_partition(h_gt)
    return all(not part.intersect(fixed).is_empty() for part in mpp.components)


@dataclass(frozen=True)
class StrongSignForm:
    h_p: Element
    h_gt: Element
    k_gt: Element
    h_lt: Element
    k_lt: Element

    def recompose(self):
        return self.h_p * self.h_gt.conjugate(self.k_gt) * self.h_lt.conjugate(self.k_lt)


def strong_sign_form(h):
    """``h = h_p (k_gt h_gt k_gt^-1)(k_lt h_lt k_lt^-1)``.

    The negative part is handled by the positive code path after mirroring
    (conjugating by ``x -> -x``), so ``h_lt`` and ``k_lt`` have exponents ``<= 0``.
    """
    sp = sign_partition(h)
    h_gt = positive_form(sp.h_plus)
    k_gt = canonical_conjugator(sp.h_plus)
    neg = sp.h_minus.mirror()
    h_lt = positive_form(neg).mirror()
    k_lt = canonical_conjugator(neg).mirror()
    form = StrongSignForm(sp.h_p, h_gt, k_gt, h_lt, k_lt)
    check(form.recompose() == h, "strong sign form does not recompose")
    return form


@dataclass(frozen=True)
class Verdict:
    kind: str  # "ConjugateOfG", "ConjugateOfGinv" or "Neither"
    conjugator: Element | None = None


def generator_conjugacy(h):
    """Decide whether ``h`` is conjugate in the full group to ``g`` or ``g^-1``."""
    g = Element.generator(h.system)
    if is_positive(h) and positive_form(h) == g:
        return Verdict("ConjugateOfG", canonical_conjugator(h))
    inv = ~h
    if is_positive(inv) and positive_form(inv) == g:
        return Verdict("ConjugateOfGinv", canonical_conjugator(inv))
    return Verdict("Neither")
