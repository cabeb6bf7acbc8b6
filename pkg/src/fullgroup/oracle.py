"""Brute-force checks on the integer line, independent of the cycle theory.

Point ``t`` stands for ``g^t x0`` with ``x0`` the zero sequence, so its depth-``D``
code is ``t mod B_D`` and ``h`` moves ``t`` to ``t + n_{t mod B_D}``.  Nothing here
uses cycle weights or multipliers.  Orbits are simulated on ``[-N, N]`` and
classified by where they leave the window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvariantError
from .orbits import NEGATIVE, PERIODIC, POSITIVE, analyze, cycle_graph, minimal_periodic_partition


@dataclass
class OrbitStats:
    N: int
    size: int  # B_D
    margin: int  # points this close to the window edge are not interior
    points: np.ndarray  # t = -N .. N
    drift: np.ndarray  # +1 exits right, -1 exits left, 0 periodic
    period: np.ndarray  # exact period, 0 on infinite orbits
    fragment: np.ndarray  # connected component of the orbit graph in the window
    block: int
    block_counts: list  # (positive, negative) orbits meeting each sampled interior block
    mean_cocycle: float

    @property
    def interior(self):
        return np.abs(self.points) <= self.N - self.margin

    def orbit_counts(self):
        """The common ``(positive, negative)`` count over the sampled blocks."""
        counts = set(self.block_counts)
        if len(counts) != 1:
            raise InvariantError(f"orbit counts vary between blocks: {sorted(counts)}")
        return counts.pop()


def simulate_line(h, N, blocks=8):
    size = h.size
    if N < size:
        raise ValueError("window must be at least B_D")
    norm = max(1, h.norm())
    margin = 2 * norm * size
    if N <= 2 * margin:
        raise ValueError("window too small for an interior")
    table = np.asarray(h.table, dtype=np.int64)
    points = np.arange(-N, N + 1, dtype=np.int64)
    n = len(points)
    step = table[points % size]
    target = points + step
    # indices n and n+1 are absorbing exits to the right and the left
    nxt = np.where(target > N, n, np.where(target < -N, n + 1, target + N))
    nxt = np.concatenate([nxt, [n, n + 1]])
    jump = nxt.copy()
    for _ in range(int(np.ceil(np.log2(n * size * norm + 2))) + 1):
        nxt2 = jump[jump]
        if np.array_equal(nxt2, jump):
            break
        jump = nxt2
    end = jump[:n]
    drift = np.where(end == n, 1, np.where(end == n + 1, -1, 0))

    period = np.zeros(n, dtype=np.int64)
    todo = np.flatnonzero(drift == 0)
    cur = nxt[todo]
    k = 1
    while todo.size:
        done = cur == todo
        period[todo[done]] = k
        todo, cur = todo[~done], cur[~done]
        cur = nxt[cur]
        k += 1
        if k > n:
            raise InvariantError("periodic point without a return")

    inside = nxt[:n] < n
    src = np.flatnonzero(inside)
    graph = coo_matrix((np.ones(src.size), (src, nxt[src])), shape=(n, n))
    _, fragment = connected_components(graph, directed=True, connection="weak")

    block = size * norm
    lo, hi = -N + margin, N - margin - block
    counts = []
    for start in np.linspace(lo, hi, blocks).astype(np.int64):
        sl = slice(start + N, start + N + block)
        d, f = drift[sl], fragment[sl]
        counts.append((len(set(f[d > 0].tolist())), len(set(f[d < 0].tolist()))))
    return OrbitStats(
        N, size, margin, points, drift, period, fragment, block, counts,
        float(step.mean()),
    )


def compare_with_analysis(h, N):
    """Mismatches between the oracle and the exact analysis (empty if none)."""
    stats = simulate_line(h, N)
    rep = analyze(h)
    problems = []
    if stats.orbit_counts() != (rep.o_plus, rep.o_minus):
        problems.append(f"orbit counts {stats.orbit_counts()} != {(rep.o_plus, rep.o_minus)}")
    inner = stats.interior
    pts = stats.points[inner]
    expect = np.zeros(pts.size, dtype=np.int64)
    for sign, part in ((1, rep.sign.X_plus), (-1, rep.sign.X_minus)):
        if not part.is_empty():
            mod = h.system.size(part.depth)
            expect[np.isin(pts % mod, part.codes)] = sign
    bad = np.flatnonzero(stats.drift[inner] != expect)
    if bad.size:
        problems.append(f"drift label differs at t={int(pts[bad[0]])}")
    want_period = np.zeros(pts.size, dtype=np.int64)
    for n, part in rep.mpp.periodic:
        mod = h.system.size(part.depth)
        want_period[np.isin(pts % mod, part.codes)] = n
    bad = np.flatnonzero(stats.period[inner] != want_period)
    if bad.size:
        problems.append(f"period differs at t={int(pts[bad[0]])}")
    return problems


def deep_refine_check(h, extra):
    """Recompute cycles ``extra`` levels deeper and check that the minimal
    components only refine into themselves and periodic parts persist."""
    if extra < 1:
        raise ValueError("extra must be at least 1")
    system = h.system
    native = cycle_graph(h)
    deep_depth = h.depth + extra
    deep = cycle_graph(h, deep_depth)
    native_kind = {}
    for c in native.cycles:
        for w in c.members:
            native_kind[w] = (c.kind, c.length)
    for c in deep.cycles:
        for w in c.members:
            kind, length = native_kind[w % h.size]
            if kind != c.kind:
                raise InvariantError(f"classification of code {w} changed on refinement")
            if kind == PERIODIC and length != c.length:
                raise InvariantError(f"period of code {w} changed on refinement")
    mpp = minimal_periodic_partition(h)
    deep_of = deep.cycle_of()
    split = []
    for comp in mpp.components:
        if comp.depth <= deep_depth:
            cycles = {deep_of[w] for w in comp.codes_at(deep_depth)}
            if len(cycles) != 1:
                raise InvariantError(f"component {comp.literal()} splits at depth {deep_depth}")
            members = set(deep.cycles[cycles.pop()].members)
            if members != set(comp.codes_at(deep_depth)):
                raise InvariantError(f"component {comp.literal()} is not a whole deep cycle")
        else:
            codes = {w % system.size(deep_depth) for w in comp.codes}
            if len({deep_of[w] for w in codes}) != 1:
                raise InvariantError(f"component {comp.literal()} meets two deep cycles")
            split.append(comp.literal())
    for n, part in mpp.periodic:
        for w in part.codes_at(deep_depth):
            if deep.cycles[deep_of[w]].length != n:
                raise InvariantError(f"X_p({n}) does not persist")
    return {
        "depth": deep_depth,
        "deep_cycles": len(deep.cycles),
        "positive": len(deep.of_kind(POSITIVE)),
        "negative": len(deep.of_kind(NEGATIVE)),
        "periodic": len(deep.of_kind(PERIODIC)),
        "components": [c.literal() for c in mpp.components],
        "deeper_than_check": split,
        "ok": True,
    }
