"""Odometers, cylinders and clopen sets.

A point of the odometer is a digit sequence ``(d_1, d_2, ...)`` with
``0 <= d_i < b_i``.  At depth ``D`` a cylinder is named by the integer code
``sum(d_i * B_{i-1})`` with ``d_1`` least significant, so that ``g`` (add one
at ``d_1``, carry to the right) acts on depth-``D`` codes as ``+1 mod B_D``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache

from .errors import CodeOutOfRange, EmptySet, FullGroupError, ParseError, SystemMismatch


def _prime_factors(n):
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def _primitive(seq):
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq == seq[:p] * (n // p):
            return seq[:p]
    return seq


@dataclass(frozen=True)
class OdometerSystem:
    """Eventually periodic base sequence ``pre + per + per + ...``.

    The stored description is normalized (primitive period, shortest
    preperiod), so equal sequences compare equal.
    """

    preperiod: tuple = ()
    period: tuple = (2,)

    def __post_init__(self):
        pre = tuple(int(b) for b in self.preperiod)
        per = tuple(int(b) for b in self.period)
        if not per:
            raise FullGroupError("period must be nonempty")
        if any(b < 2 for b in pre + per):
            raise FullGroupError("every base must be at least 2")
        per = _primitive(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def dyadic(cls):
        return cls((), (2,))

    def base(self, i):
        """The base ``b_i`` of coordinate ``i >= 1``."""
        if i < 1:
            raise ValueError("coordinates start at 1")
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        return self.period[(i - len(self.preperiod) - 1) % len(self.period)]

    @cache
    def size(self, depth):
        """``B_depth``, the number of cylinders at ``depth``."""
        if depth == 0:
            return 1
        return self.size(depth - 1) * self.base(depth)

    def tail(self, depth):
        """The system of coordinates ``depth+1, depth+2, ...``."""
        pre, per = self.preperiod, self.period
        if depth <= len(pre):
            return OdometerSystem(pre[depth:], per)
        r = (depth - len(pre)) % len(per)
        return OdometerSystem((), per[r:] + per[:r])

    def future_primes(self, depth):
        """Primes dividing some base ``b_i`` with ``i > depth``."""
        bases = self.preperiod[depth:] + self.period
        out = set()
        for b in bases:
            out |= _prime_factors(b)
        return frozenset(out)

    def coprime_to_future(self, m, depth):
        return all(m % p for p in self.future_primes(depth))

    # digits --------------------------------------------------------------

    def digits(self, code, depth):
        out = []
        for i in range(1, depth + 1):
            b = self.base(i)
            out.append(code % b)
            code //= b
        return tuple(out)

    def code(self, digits):
        c = 0
        for i, d in enumerate(digits, start=1):
            if not 0 <= d < self.base(i):
                raise CodeOutOfRange(f"digit {d} out of range at coordinate {i}")
            c += d * self.size(i - 1)
        return c

    def cylinder_literal(self, code, depth):
        ds = self.digits(code, depth)
        if all(self.base(i) <= 10 for i in range(1, depth + 1)):
            return "[" + "".join(map(str, ds)) + "]"
        return "[" + " ".join(map(str, ds)) + "]"

    def parse_cylinder(self, text):
        """``'[01]'`` or ``'[0 11 3]'`` -> ``(depth, code)``.

        Without spaces the body is read one character per digit when every base
        involved is at most 10, and as a single digit otherwise.
        """
        m = re.fullmatch(r"\[([0-9 ]*)\]", text.strip())
        if m is None:
            raise ParseError(f"bad cylinder literal {text!r}", 1)
        body = m.group(1).strip()
        if not body:
            return 0, 0
        if " " in body:
            parts = body.split()
        elif all(self.base(i) <= 10 for i in range(1, len(body) + 1)):
            parts = list(body)
        else:
            parts = [body]
        digits = [int(p) for p in parts]
        return len(digits), self.code(digits)

    # literals ------------------------------------------------------------

    def literal(self):
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"bases pre=[{pre}] per=[{per}]"

    def label(self):
        """Compact tag used in element serialization, e.g. ``D2`` or ``D2|3``."""
        per = ".".join(map(str, self.period))
        if not self.preperiod:
            return "D" + per
        return "D" + ".".join(map(str, self.preperiod)) + "|" + per

    @classmethod
    def from_label(cls, text):
        m = re.fullmatch(r"D(?:([0-9.]+)\|)?([0-9.]+)", text)
        if m is None:
            raise ParseError(f"bad system label {text!r}", 1)
        pre = tuple(int(x) for x in m.group(1).split(".")) if m.group(1) else ()
        per = tuple(int(x) for x in m.group(2).split("."))
        return cls(pre, per)

    @classmethod
    def parse(cls, text):
        """Parse ``bases pre=[...] per=[...]`` (the ``bases`` keyword and
        either field may be omitted; the default period is ``[2]``)."""
        if isinstance(text, (list, tuple)):
            text = " ".join(text)
        s = text.strip()
        if s.startswith("bases"):
            s = s[len("bases"):]
        fields = {"pre": (), "per": (2,)}
        rest = re.sub(
            r"(pre|per)\s*=\s*\[([0-9,\s]*)\]",
            lambda m: fields.__setitem__(
                m.group(1), tuple(int(x) for x in re.split(r"[,\s]+", m.group(2).strip()) if x)
            ) or "",
            s,
        )
        if rest.strip():
            raise ParseError(f"bad system literal {text!r}", 1)
        return cls(fields["pre"], fields["per"])

    def __str__(self):
        return self.literal()


def refine_codes(system, codes, depth, new_depth):
    """Codes at ``new_depth >= depth`` covering the same point set."""
    if new_depth == depth:
        return list(codes)
    step = system.size(depth)
    k = system.size(new_depth) // step
    return sorted(c + step * j for c in codes for j in range(k))


def _canonical_codes(system, depth, codes):
    codes = sorted(set(codes))
    while depth > 0:
        b = system.base(depth)
        parent_size = system.size(depth - 1)
        parents = {c % parent_size for c in codes}
        if len(codes) != len(parents) * b:
            break
        codes = sorted(parents)
        depth -= 1
    return depth, tuple(codes)


@dataclass(frozen=True)
class ClopenSet:
    """A clopen subset of the odometer, stored as a set of codes at one depth.

    Always canonical: the depth is as small as possible, so two instances are
    equal iff they denote the same point set.
    """

    system: OdometerSystem
    depth: int
    codes: tuple

    @classmethod
    def make(cls, system, depth, codes):
        """Canonicalize ``codes`` (cylinders at ``depth``)."""
        size = system.size(depth)
        codes = list(codes)
        for c in codes:
            if not 0 <= c < size:
                raise CodeOutOfRange(f"code {c} not in [0, {size})")
        d, cs = _canonical_codes(system, depth, codes)
        return cls(system, d, cs)

    @classmethod
    def whole(cls, system):
        return cls(system, 0, (0,))

    @classmethod
    def empty(cls, system):
        return cls(system, 0, ())

    @classmethod
    def cylinder(cls, system, depth, code):
        return cls.make(system, depth, [code])

    def is_empty(self):
        return not self.codes

    def is_whole(self):
        return self.depth == 0 and self.codes == (0,)

    def codes_at(self, depth):
        if depth < self.depth:
            raise ValueError("cannot coarsen a clopen set")
        return refine_codes(self.system, self.codes, self.depth, depth)

    def code_set_at(self, depth):
        return frozenset(self.codes_at(depth))

    def contains_code(self, code, depth):
        """Whether the depth-``depth`` cylinder ``code`` lies in the set
        (``depth`` must be at least the set's depth)."""
        return code % self.system.size(self.depth) in self._members

    @property
    def _members(self):
        # frozen dataclass: memoize on the instance dict
        try:
            return self.__dict__["_member_cache"]
        except KeyError:
            s = frozenset(self.codes)
            object.__setattr__(self, "_member_cache", s)
            return s

    def measure(self):
        """Fraction of cylinders of any fine depth lying in the set."""
        from fractions import Fraction

        return Fraction(len(self.codes), self.system.size(self.depth))

    def _common(self, other):
        if not isinstance(other, ClopenSet):
            raise TypeError("expected a ClopenSet")
        if other.system != self.system:
            raise SystemMismatch("clopen sets over different systems")
        d = max(self.depth, other.depth)
        return d, self.code_set_at(d), other.code_set_at(d)

    def union(self, other):
        d, a, b = self._common(other)
        return ClopenSet.make(self.system, d, a | b)

    def intersect(self, other):
        d, a, b = self._common(other)
        return ClopenSet.make(self.system, d, a & b)

    def difference(self, other):
        d, a, b = self._common(other)
        return ClopenSet.make(self.system, d, a - b)

    def complement(self):
        size = self.system.size(self.depth)
        return ClopenSet.make(self.system, self.depth, set(range(size)) - self._members)

    def issubset(self, other):
        d, a, b = self._common(other)
        return a <= b

    def translate(self, t):
        """``g^t A``."""
        size = self.system.size(self.depth)
        return ClopenSet.make(self.system, self.depth, [(c + t) % size for c in self.codes])

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __le__ = issubset

    def __invert__(self):
        return self.complement()

    def cylinders(self):
        """``(depth, code)`` pairs of a coarsest cylinder cover (disjoint)."""
        out = []
        pending = set(self.codes)
        for d in range(0, self.depth + 1):
            size = self.system.size(d)
            k = self.system.size(self.depth) // size
            for c in range(size):
                children = {c + size * j for j in range(k)}
                if children <= pending:
                    out.append((d, c))
                    pending -= children
        return out

    def literal(self):
        if self.is_empty():
            return "{}"
        if self.is_whole():
            return "X"
        return "+".join(self.system.cylinder_literal(c, d) for d, c in self.cylinders())

    def __str__(self):
        return self.literal()

    def require_nonempty(self):
        if self.is_empty():
            raise EmptySet("clopen set is empty")
        return self


def parse_clopen(system, text):
    """Cylinder literals joined by ``+``; ``{}`` is the empty set, ``X`` the whole space."""
    text = text.strip()
    if text == "{}":
        return ClopenSet.empty(system)
    if text == "X":
        return ClopenSet.whole(system)
    out = ClopenSet.empty(system)
    for part in text.split("+"):
        depth, code = system.parse_cylinder(part)
        out = out | ClopenSet.cylinder(system, depth, code)
    return out
