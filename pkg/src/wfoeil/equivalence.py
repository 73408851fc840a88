"""WFA equivalence.

Exact decision over skew fields (here: exact rationals, with the naturals
embedded) via the forward prefix-vector algorithm: close the space spanned
by {init·M_w} under the transition matrices, processing words in
length-lexicographic order so the first separating word found is shortest.
Everything else gets the sound-but-bounded word comparison.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, ResourceError, WfoeilError
from .automata import Wfa, wfa_behavior
from .semiring import builtin

BOUNDED_WORD_CAP = 2000000


@dataclass
class EquivVerdict:
    equivalent: bool
    witness: object = None  # word separating the behaviors, if any
    values: tuple = None  # (behavior1, behavior2) at the witness
    basis_size: int = 0
    bound: int = None  # set when this is only a bounded check


def _to_rational(A):
    name = A.semiring.name
    if name == "rational":
        return A
    if name == "natural":
        sr = builtin("rational")
        return Wfa(sr, A.alphabet, A.n,
                   {q: Fraction(w) for q, w in A.init.items()},
                   {q: Fraction(w) for q, w in A.ter.items()},
                   {a: [(p, q, Fraction(w)) for p, q, w in es]
                    for a, es in A.edges.items()})
    raise CapabilityError(
        "exact equivalence needs a skew-field semiring (rational, or natural "
        "embedded into it); over %r use bounded_equiv" % name)


def _support_letters(*autos):
    seen = []
    for a in autos[0].alphabet:
        if any(a in A.edges and A.edges[a] for A in autos):
            seen.append(a)
    return seen


def decide_equiv(A1, A2):
    if tuple(A1.alphabet) != tuple(A2.alphabet):
        raise WfoeilError("alphabet mismatch between automata")
    B1, B2 = _to_rational(A1), _to_rational(A2)
    sr = B1.semiring
    n = B1.n + B2.n
    off = B1.n

    # Vectors are sparse {state: value} dicts: translated automata can be
    # large while prefix vectors stay thin, and dense length-n lists were
    # the memory/time bottleneck.
    init = {}
    for q, w in B1.init.items():
        if w:
            init[q] = w
    for q, w in B2.init.items():
        if w:
            init[q + off] = -w  # difference automaton: negate the second behavior
    ter = {}
    for q, w in B1.ter.items():
        if w:
            ter[q] = w
    for q, w in B2.ter.items():
        if w:
            ter[q + off] = w

    letters = _support_letters(B1, B2)
    step = {}
    for a in letters:
        es = [(p, q, w) for p, q, w in B1.edges.get(a, [])]
        es += [(p + off, q + off, w) for p, q, w in B2.edges.get(a, [])]
        step[a] = es

    def apply(v, a):
        out = {}
        for p, q, w in step[a]:
            x = v.get(p)
            if x:
                y = out.get(q, Fraction(0)) + x * w
                if y:
                    out[q] = y
                elif q in out:
                    del out[q]
        return out

    def dot(v):
        acc = Fraction(0)
        small, big = (v, ter) if len(v) <= len(ter) else (ter, v)
        for i, x in small.items():
            y = big.get(i)
            if y:
                acc += x * y
        return acc

    basis = []  # list of (pivot index, echelon vector); pivots are distinct

    def reduce(v):
        v = dict(v)
        for piv, b in basis:
            x = v.get(piv)
            if x:
                c = x / b[piv]
                for i, y in b.items():
                    z = v.get(i, Fraction(0)) - c * y
                    if z:
                        v[i] = z
                    elif i in v:
                        del v[i]
        return v

    # queue entries are (word, parent vector, letter); the successor vector
    # is computed on pop so the queue itself stays small
    work = deque([((), init, None)])
    while work:
        word, parent, a = work.popleft()
        v = parent if a is None else apply(parent, a)
        if dot(v) != 0:
            return _confirmed_witness(A1, A2, word, len(basis))
        res = reduce(v)
        if not res:
            continue
        basis.append((min(res), res))
        for a in letters:
            work.append((word + (a,), v, a))
    return EquivVerdict(True, basis_size=len(basis))


def _confirmed_witness(A1, A2, word, basis_size):
    v1 = wfa_behavior(A1, word)
    v2 = wfa_behavior(A2, word)
    if A1.semiring.eq(v1, v2):
        raise WfoeilError("internal error: candidate witness does not separate")
    return EquivVerdict(False, witness=word, values=(v1, v2), basis_size=basis_size)


def bounded_equiv(A1, A2, max_len):
    if tuple(A1.alphabet) != tuple(A2.alphabet):
        raise WfoeilError("alphabet mismatch between automata")
    sr = A1.semiring
    letters = _support_letters(A1, A2)
    total = 1
    count = 1
    for _ in range(max_len):
        count = count * max(1, len(letters))
        total += count
        if total > BOUNDED_WORD_CAP:
            raise ResourceError(
                "bounded check would compare more than %d words; lower the "
                "bound or shrink the alphabet" % BOUNDED_WORD_CAP)
    frontier = [()]
    checked = 0
    for _ in range(max_len + 1):
        for w in frontier:
            checked += 1
            v1 = wfa_behavior(A1, w)
            v2 = wfa_behavior(A2, w)
            if not sr.eq(v1, v2):
                return EquivVerdict(False, witness=w, values=(v1, v2),
                                    bound=max_len)
        frontier = [w + (a,) for w in frontier for a in letters
                    if len(w) < max_len]
    return EquivVerdict(True, bound=max_len)


def sentence_equiv(f1, f2, system, r, alphabet=None, strict=True,
                   bounded=None, max_states=None, max_edges=None):
    from .system import instantiate
    from .translate import translate_wfoeil, DEFAULT_STATE_BUDGET, DEFAULT_EDGE_BUDGET
    view = instantiate(system, r)
    kw = {"alphabet": alphabet, "strict": strict,
          "max_states": max_states or DEFAULT_STATE_BUDGET,
          "max_edges": max_edges or DEFAULT_EDGE_BUDGET}
    A1 = translate_wfoeil(view, f1, **kw)
    A2 = translate_wfoeil(view, f2, **kw)
    if bounded is not None:
        return bounded_equiv(A1, A2, bounded)
    return decide_equiv(A1, A2)
