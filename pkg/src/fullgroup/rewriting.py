"""Normal forms in induced generators, word reduction, pure cycles and layers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .element import Element, induced_generator
from .errors import EmptySet, NotPeriodic, SystemMismatch, check
from .odometer import ClopenSet
from .orbits import PERIODIC, cycle_graph, index


@dataclass(frozen=True)
class NormalForm:
    """``h = g_{A_n} ... g_{A_1} g^r`` with ``A_n <= ... <= A_1``, ``A_1`` proper."""

    r: int
    chain: tuple  # (A_1, A_2, ..., A_n)

    def literal(self):
        if not self.chain and self.r == 0:
            return "id"
        parts = [_ind_literal(A) for A in reversed(self.chain)]
        if self.r:
            parts.append("g" if self.r == 1 else f"g^{self.r}")
        return " ".join(parts)


def _peel(p, limit):
    """Split strongly positive ``p`` into ``g_{C_k} ... g_{C_1}`` by repeated
    removal of ``g_{supp}`` on the right.  Returns ``[C_1, ..., C_k]``."""
    chain = []
    while not p.is_identity():
        check(p.is_strongly_positive(), "peeling left the strongly positive monoid")
        check(len(chain) < limit, "peeling did not terminate at the index")
        A = p.support()
        if chain:
            check(A.issubset(chain[-1]), "support chain is not nested")
        chain.append(A)
        p = p * ~induced_generator(A)
    return chain


def normal_form(h):
    r = min(h.table)
    p = h * Element.generator(h.system) ** (-r)
    n = index(h) - r
    chain = _peel(p, n)
    check(len(chain) == n, "chain length differs from index - r")
    check(not chain or not chain[0].is_whole(), "first support is the whole space")
    nf = NormalForm(r, tuple(chain))
    check(evaluate(nf, h.system) == h, "normal form does not evaluate back")
    return nf


def evaluate(nf, system):
    out = Element.generator(system) ** nf.r
    for A in nf.chain:
        out = induced_generator(A) * out
    return out


def is_irreducible(h):
    """An irreducible of the strongly positive monoid: an induced generator."""
    return h.is_strongly_positive() and not h.is_identity() and index(h) == 1


def star(A, B):
    """The clopen set with ``g_A g_B = g_{A*B} g_{A|B}`` and ``A*B <= A|B``."""
    A.require_nonempty()
    B.require_nonempty()
    if A.system != B.system:
        raise SystemMismatch("clopen sets over different systems")
    p = induced_generator(A) * induced_generator(B)
    chain = _peel(p, 2)
    check(len(chain) == 2 and chain[0] == A.union(B), "g_A g_B has an unexpected chain")
    return chain[1]


def support_order_le(A, B):
    """``g_A <=_supp g_B``, which is inclusion ``A <= B``."""
    if A.is_empty() or B.is_empty():
        raise EmptySet("support order is defined on nonempty sets")
    return A.issubset(B)


# words ---------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # "G", "Ginv" or "Ind"
    set: ClopenSet | None = None

    def literal(self):
        if self.kind == "G":
            return "g"
        if self.kind == "Ginv":
            return "g^-1"
        return _ind_literal(self.set)


G = Token("G")
GINV = Token("Ginv")


def Ind(A):
    A.require_nonempty()
    return Token("Ind", A)


def _ind_literal(A):
    cyls = A.cylinders()
    if len(cyls) == 1:
        d, c = cyls[0]
        return "g_" + A.system.cylinder_literal(c, d)
    return f"g_({A.literal()})"


@dataclass(frozen=True)
class GeneratorWord:
    """Tokens composed right to left: the last token is applied first."""

    system: object
    tokens: tuple

    def literal(self):
        """Runs of equal tokens print as powers, e.g. ``g^-3`` or ``g_[1]^2``."""
        parts = []
        for tok, run in groupby(self.tokens):
            k = len(list(run))
            if k == 1:
                parts.append(tok.literal())
            elif tok.kind == "Ginv":
                parts.append(f"g^-{k}")
            else:
                parts.append(f"{tok.literal()}^{k}")
        return " ".join(parts) or "id"

    def evaluate(self):
        out = Element.identity(self.system)
        g = Element.generator(self.system)
        for t in self.tokens:
            if t.kind == "G":
                out = out * g
            elif t.kind == "Ginv":
                out = out * ~g
            else:
                out = out * induced_generator(t.set)
        return out


def word_of_normal_form(nf, system):
    X = ClopenSet.whole(system)
    tokens = [Ind(A) for A in reversed(nf.chain)]
    tokens += [Ind(X)] * nf.r if nf.r >= 0 else [GINV] * (-nf.r)
    return GeneratorWord(system, tuple(tokens))


def rewrite_r1(tokens, i):
    """``Ginv Ind(A) -> Ind(g^-1 A) Ginv`` at positions ``i, i+1``."""
    a, b = tokens[i], tokens[i + 1]
    assert a.kind == "Ginv" and b.kind == "Ind"
    return tokens[:i] + [Ind(b.set.translate(-1)), GINV] + tokens[i + 2:]


def rewrite_r2(tokens, i):
    """``Ind(A) Ind(B) -> Ind(A*B) Ind(A|B)`` at positions ``i, i+1``."""
    A, B = tokens[i].set, tokens[i + 1].set
    return tokens[:i] + [Ind(star(A, B)), Ind(A.union(B))] + tokens[i + 2:]


def reduce_word(word):
    """Reduce to the unique reduced word via the three rewriting phases.

    Phase (ii) always rewrites the leftmost non-nested pair ``Ind(A) Ind(B)``
    (``A`` not inside ``B``).  The right slot grows strictly to ``A|B`` and nothing
    to its right changes, so the measure sequence read from the right end
    increases lexicographically; being bounded, this terminates.
    """
    system = word.system
    X = ClopenSet.whole(system)
    tokens = [Ind(X) if t.kind == "G" else t for t in word.tokens]
    for t in tokens:
        if t.kind == "Ind" and t.set.system != system:
            raise SystemMismatch("token over a different system")

    # (i) move every Ginv to the right end
    changed = True
    while changed:
        changed = False
        for i in range(len(tokens) - 1):
            if tokens[i].kind == "Ginv" and tokens[i + 1].kind == "Ind":
                tokens = rewrite_r1(tokens, i)
                changed = True
    n_ind = sum(1 for t in tokens if t.kind == "Ind")
    check(all(t.kind == "Ind" for t in tokens[:n_ind]), "phase (i) left a Ginv inside")

    # (ii) nest the induced prefix
    while True:
        bad = next(
            (i for i in range(n_ind - 1) if not tokens[i].set.issubset(tokens[i + 1].set)),
            None,
        )
        if bad is None:
            break
        before = _right_measures(tokens[:n_ind])
        tokens = rewrite_r2(tokens, bad)
        check(_right_measures(tokens[:n_ind]) > before, "phase (ii) measure did not increase")

    # (iii) cancel Ind(X) Ginv pairs
    while n_ind and tokens[n_ind - 1].set.is_whole() and n_ind < len(tokens):
        tokens = tokens[: n_ind - 1] + tokens[n_ind + 1:]
        n_ind -= 1

    out = GeneratorWord(system, tuple(tokens))
    value = word.evaluate()
    check(out.evaluate() == value, "reduction changed the element")
    check(out == word_of_normal_form(normal_form(value), system), "reduced word is not the normal form")
    return out


def _right_measures(tokens):
    return [t.set.measure() for t in reversed(tokens)]


# pure cycles ---------------------------------------------------------------


@dataclass(frozen=True)
class PureCycle:
    base: ClopenSet
    length: int
    signature: tuple
    element: Element


def _rotations(sig):
    return {sig[i:] + sig[:i] for i in range(len(sig))}


def pure_cycle_decomposition(h):
    """Unique set of pure cycles with disjoint supports and distinct signatures
    whose product is the pointwise periodic element ``h``."""
    cg = cycle_graph(h)
    if any(c.kind != PERIODIC for c in cg.cycles):
        raise NotPeriodic("element has infinite orbits")
    table, perm = h.table, cg.permutation
    signature = {}
    for c in cg.cycles:
        for w in c.members:
            sig, v = [], w
            for _ in range(c.length):
                sig.append(table[v])
                v = perm[v]
            signature[w] = tuple(sig)
    # E'-classes keyed by the lexicographically least rotation
    classes = {}
    for w, sig in signature.items():
        if sig == (0,):
            continue
        classes.setdefault(min(_rotations(sig)), []).append(w)
    out = []
    for codes in classes.values():
        first = min(codes)
        base_sig = signature[first]
        base_codes = [w for w in codes if signature[w] == base_sig]
        check(len(_rotations(base_sig)) == len(base_sig), "signature rotations not distinct")
        base = ClopenSet.make(h.system, h.depth, base_codes)
        part = ClopenSet.make(h.system, h.depth, codes)
        out.append(PureCycle(base, len(base_sig), base_sig, h.restrict(part)))
    out.sort(key=lambda pc: pc.base.codes_at(h.depth)[0])
    product = Element.identity(h.system)
    for pc in out:
        product = product * pc.element
    check(product == h, "pure cycles do not recompose")
    check(len({min(_rotations(pc.signature)) for pc in out}) == len(out), "repeated signature")
    return out


def periodic_layers(h, n):
    """``X_p(n)`` split as ``X_p(n,0..n-1)`` with ``h X_p(n,i) = X_p(n,i+1 mod n)``."""
    cg = cycle_graph(h)
    layers = [[] for _ in range(n)]
    for c in cg.cycles:
        if c.kind == PERIODIC and c.length == n:
            for i, w in enumerate(c.members):
                layers[i].append(w)
    if not layers[0]:
        raise NotPeriodic(f"no points of period {n}")
    return [ClopenSet.make(h.system, cg.depth, codes) for codes in layers]
