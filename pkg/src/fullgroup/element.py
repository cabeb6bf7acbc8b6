"""Elements of the topological full group of an odometer.

Representation: ``g^n`` maps the depth-``D`` cylinder with code ``w`` onto the
cylinder with code ``(w + n) mod B_D``, carrying into the tail digits but
otherwise preserving them.  Hence any table ``w -> n_w`` of exponents whose
code map ``w -> (w + n_w) mod B_D`` is a permutation defines a homeomorphism
acting on cylinder ``w`` as ``g^{n_w}``; conversely every element of the full
group has a locally constant cocycle, hence such a table at some depth.  The
table *is* the cocycle ``c_{g,h}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CodeOutOfRange, NotBijective, ParseError, SystemMismatch
from .odometer import ClopenSet, OdometerSystem


def _canonical_table(system, depth, table):
    while depth > 0:
        parent_size = system.size(depth - 1)
        if any(table[c] != table[c % parent_size] for c in range(parent_size, len(table))):
            break
        table = table[:parent_size]
        depth -= 1
    return depth, tuple(table)


@dataclass(frozen=True)
class Element:
    """``h`` acting on the depth-``depth`` cylinder ``w`` as ``g^{table[w]}``.

    Instances are canonical (depth minimal), so ``==`` is equality of
    homeomorphisms.  Build them with :func:`validate` or the helpers below.
    """

    system: OdometerSystem
    depth: int
    table: tuple

    # construction -------------------------------------------------------

    @classmethod
    def _trusted(cls, system, depth, table):
        d, t = _canonical_table(system, depth, list(table))
        return cls(system, d, t)

    @classmethod
    def identity(cls, system):
        return cls(system, 0, (0,))

    @classmethod
    def generator(cls, system):
        return cls(system, 0, (1,))

    # basic data ---------------------------------------------------------

    @property
    def size(self):
        return self.system.size(self.depth)

    def table_at(self, depth):
        """The exponent table refined to ``depth >= self.depth``."""
        if depth < self.depth:
            raise ValueError("cannot coarsen an element")
        reps = self.system.size(depth) // self.size
        return self.table * reps

    def permutation(self, depth=None):
        depth = self.depth if depth is None else depth
        size = self.system.size(depth)
        return [(w + n) % size for w, n in enumerate(self.table_at(depth))]

    def norm(self):
        """``|h|_g``, the largest absolute exponent."""
        return max(abs(n) for n in self.table)

    def is_identity(self):
        return self.depth == 0 and self.table == (0,)

    def is_strongly_positive(self):
        return min(self.table) >= 0

    def support(self):
        """Cylinders moved by ``h`` (nonzero exponent; ``g`` has no periodic points)."""
        return ClopenSet.make(self.system, self.depth, [w for w, n in enumerate(self.table) if n])

    def fixed_set(self):
        return self.support().complement()

    # group operations ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Element):
            raise TypeError("expected an Element")
        if other.system != self.system:
            raise SystemMismatch("elements over different systems")

    def __mul__(self, other):
        """``(a * b)(x) = a(b(x))``; cocycle ``c_ab(w) = c_a(w + c_b(w)) + c_b(w)``."""
        self._check(other)
        d = max(self.depth, other.depth)
        size = self.system.size(d)
        ta, tb = self.table_at(d), other.table_at(d)
        return Element._trusted(self.system, d, [ta[(w + nb) % size] + nb for w, nb in enumerate(tb)])

    def __invert__(self):
        size = self.size
        out = [0] * size
        for w, n in enumerate(self.table):
            out[(w + n) % size] = -n
        return Element._trusted(self.system, self.depth, out)

    def inverse(self):
        return ~self

    def __pow__(self, t):
        if t < 0:
            return (~self) ** (-t)
        if t <= 8:
            out = Element.identity(self.system)
            for _ in range(t):
                out = out * self
            return out
        half = self ** (t // 2)
        out = half * half
        return out * self if t % 2 else out

    def conjugate(self, k):
        """``k h k^{-1}``."""
        return k * self * ~k

    def restrict(self, part):
        """``h`` on the ``h``-invariant clopen set ``part``, identity elsewhere."""
        d = max(self.depth, part.depth)
        members = part.code_set_at(d)
        tab = self.table_at(d)
        return Element._trusted(self.system, d, [n if w in members else 0 for w, n in enumerate(tab)])

    def mirror(self):
        """Conjugate by the negation ``x -> -x`` of the odometer.

        Negation conjugates ``g`` to ``g^{-1}`` and maps cylinder ``w`` to
        ``-w mod B_D``; the result has table ``w -> -table[-w]``.  It is an
        automorphism exchanging positive and negative orientation.
        """
        size = self.size
        return Element._trusted(self.system, self.depth, [-self.table[(-w) % size] for w in range(size)])

    def image(self, A):
        """``h A`` for a clopen set ``A``."""
        if A.system != self.system:
            raise SystemMismatch("set and element over different systems")
        d = max(self.depth, A.depth)
        perm = self.permutation(d)
        return ClopenSet.make(self.system, d, [perm[c] for c in A.codes_at(d)])

    # serialization -------------------------------------------------------

    def serialize(self):
        body = ",".join(f"{w}:{n}" for w, n in enumerate(self.table))
        return f"{self.system.label()}@{self.depth}{{{body}}}"

    def __str__(self):
        return self.serialize()


def validate(system, depth, table):
    """Check a raw exponent table and return the canonical :class:`Element`.

    ``table`` is a sequence indexed by code or a mapping ``code -> exponent``
    that must be total on ``[0, B_depth)``.
    """
    size = system.size(depth)
    if isinstance(table, dict):
        for k in table:
            if not 0 <= k < size:
                raise CodeOutOfRange(f"code {k} not in [0, {size})")
        missing = [w for w in range(size) if w not in table]
        if missing:
            raise CodeOutOfRange(f"table is missing codes {missing[:5]}")
        table = [table[w] for w in range(size)]
    table = [int(n) for n in table]
    if len(table) != size:
        raise CodeOutOfRange(f"table has {len(table)} entries, expected {size}")
    seen = {}
    for w, n in enumerate(table):
        v = (w + n) % size
        if v in seen:
            raise NotBijective(
                f"codes {seen[v]} and {w} both map to {v}", witness=(seen[v], w, v)
            )
        seen[v] = w
    return Element._trusted(system, depth, table)


_SERIAL = re.compile(r"(D[0-9.|]+)@(\d+)\{([^}]*)\}")


def deserialize(text):
    m = _SERIAL.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"bad element serialization {text!r}", 1)
    system = OdometerSystem.from_label(m.group(1))
    depth = int(m.group(2))
    table = {}
    for item in filter(None, m.group(3).split(",")):
        k, v = item.split(":")
        table[int(k)] = int(v)
    return validate(system, depth, table)


def identity(system):
    return Element.identity(system)


def generator(system):
    return Element.generator(system)


def compose(a, b):
    return a * b


def invert(a):
    return ~a


def power(a, t):
    return a ** t


def induced_generator(A):
    """``g_A`` joined with the identity off ``A``.

    On ``w`` in ``A`` (at ``A``'s depth) the exponent is the least ``t > 0``
    with ``w + t`` again in ``A``, the first return time.
    """
    A.require_nonempty()
    size = A.system.size(A.depth)
    codes = A.codes
    table = [0] * size
    for i, w in enumerate(codes):
        nxt = codes[(i + 1) % len(codes)]
        table[w] = (nxt - w) % size or size
    return Element._trusted(A.system, A.depth, table)


def induced_element(h, A):
    """First-return map ``h_A`` of ``h`` to ``A``, joined with the identity."""
    A.require_nonempty()
    if A.system != h.system:
        raise SystemMismatch("set and element over different systems")
    d = max(h.depth, A.depth)
    size = h.system.size(d)
    tab = h.table_at(d)
    members = A.code_set_at(d)
    out = [0] * size
    for w in members:
        total, v = tab[w], (w + tab[w]) % size
        while v not in members:
            total += tab[v]
            v = (v + tab[v]) % size
        out[w] = total
    return Element._trusted(h.system, d, out)


def dominates(a, b):
    """``c_a <= c_b`` everywhere, i.e. ``b a^{-1}`` is strongly positive."""
    a._check(b)
    d = max(a.depth, b.depth)
    return all(x <= y for x, y in zip(a.table_at(d), b.table_at(d)))
