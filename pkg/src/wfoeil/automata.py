"""Finite automata, plain and weighted.

States are always 0..n-1; letters are opaque hashables (interaction
frozensets in the pipeline, plain strings in unit tests).  NFAs keep a
transition map (q, letter) -> frozenset of targets; WFAs keep sparse
initial/terminal distributions and per-letter edge lists.  The weighted
constructions realize sum, Hadamard, Cauchy and shuffle products of the
behaviors; Cauchy uses initial/terminal bridging weights instead of
ε-moves, so the empty-word behavior is always in·ter.
"""

from dataclasses import dataclass, field

from .errors import ValidationError, ResourceError
from .system import format_letter
from .semiring import builtin

DEFAULT_STATE_BUDGET = 200000


# ------------------------------------------------------------------- NFAs


@dataclass
class Nfa:
    alphabet: tuple
    n: int
    initial: frozenset
    accepting: frozenset
    delta: dict  # (q, letter) -> frozenset

    def targets(self, q, a):
        return self.delta.get((q, a), frozenset())


def _check_same_alphabet(a1, a2):
    if tuple(a1) != tuple(a2):
        raise ValidationError("alphabet mismatch between automata")


def nfa_accepts(A, word):
    cur = set(A.initial)
    for a in word:
        if a not in A.alphabet:
            raise ValidationError("letter %r outside the automaton alphabet" % (a,))
        nxt = set()
        for q in cur:
            nxt |= A.targets(q, a)
        cur = nxt
        if not cur:
            break
    return bool(cur & A.accepting)


def _relabel(alphabet, states, initial, accepting, delta):
    """Renumbers arbitrary hashable states to 0..n-1 (stable order)."""
    idx = {s: i for i, s in enumerate(states)}
    d = {}
    for (q, a), ts in delta.items():
        if q in idx:
            tt = frozenset(idx[t] for t in ts if t in idx)
            if tt:
                d[(idx[q], a)] = tt
    return Nfa(tuple(alphabet), len(states),
               frozenset(idx[q] for q in initial if q in idx),
               frozenset(idx[q] for q in accepting if q in idx), d)


def nfa_union(A, B):
    _check_same_alphabet(A.alphabet, B.alphabet)
    off = A.n
    delta = dict(A.delta)
    for (q, a), ts in B.delta.items():
        delta[(q + off, a)] = frozenset(t + off for t in ts)
    return Nfa(A.alphabet, A.n + B.n,
               A.initial | frozenset(q + off for q in B.initial),
               A.accepting | frozenset(q + off for q in B.accepting), delta)


def nfa_concat(A, B):
    _check_same_alphabet(A.alphabet, B.alphabet)
    off = A.n
    delta = dict(A.delta)
    for (q, a), ts in B.delta.items():
        delta[(q + off, a)] = frozenset(t + off for t in ts)
    binit = frozenset(q + off for q in B.initial)
    # edges that land in an accepting A state also jump into B's start
    for (q, a), ts in A.delta.items():
        if ts & A.accepting:
            delta[(q, a)] = delta.get((q, a), frozenset()) | binit
    initial = A.initial
    if A.initial & A.accepting:  # A accepts the empty word
        initial = initial | binit
    accepting = frozenset(q + off for q in B.accepting)
    if B.initial & B.accepting:  # B accepts the empty word
        accepting = accepting | A.accepting
    return Nfa(A.alphabet, A.n + B.n, initial, accepting, delta)


def nfa_intersect(A, B):
    _check_same_alphabet(A.alphabet, B.alphabet)
    delta = {}
    states = [(p, q) for p in range(A.n) for q in range(B.n)]
    for (p, a), ts in A.delta.items():
        for q in range(B.n):
            us = B.targets(q, a)
            if us:
                delta[((p, q), a)] = frozenset((t, u) for t in ts for u in us)
    return _relabel(A.alphabet, states,
                    {(p, q) for p in A.initial for q in B.initial},
                    {(p, q) for p in A.accepting for q in B.accepting}, delta)


def nfa_shuffle(A, B):
    _check_same_alphabet(A.alphabet, B.alphabet)
    states = [(p, q) for p in range(A.n) for q in range(B.n)]
    delta = {}
    for (p, q) in states:
        for a in A.alphabet:
            ts = {(t, q) for t in A.targets(p, a)} | {(p, u) for u in B.targets(q, a)}
            if ts:
                delta[((p, q), a)] = frozenset(ts)
    return _relabel(A.alphabet, states,
                    {(p, q) for p in A.initial for q in B.initial},
                    {(p, q) for p in A.accepting for q in B.accepting}, delta)


def nfa_determinize_complete(A, max_states=DEFAULT_STATE_BUDGET):
    """Subset construction; the empty subset is the (always present) sink,
    so the result is deterministic and complete."""
    start = frozenset(A.initial)
    order = [start]
    index = {start: 0}
    delta = {}
    pos = 0
    while pos < len(order):
        S = order[pos]
        pos += 1
        for a in A.alphabet:
            T = frozenset(t for q in S for t in A.targets(q, a))
            if T not in index:
                if len(order) >= max_states:
                    raise ResourceError(
                        "determinization exceeded the %d-state budget" % max_states)
                index[T] = len(order)
                order.append(T)
            delta[(index[S], a)] = frozenset([index[T]])
    accepting = frozenset(index[S] for S in order if S & A.accepting)
    return Nfa(A.alphabet, len(order), frozenset([0]), accepting, delta)


def nfa_complement(A, max_states=DEFAULT_STATE_BUDGET):
    D = nfa_determinize_complete(A, max_states)
    return Nfa(D.alphabet, D.n, D.initial,
               frozenset(range(D.n)) - D.accepting, D.delta)


def nfa_is_deterministic_complete(A):
    if len(A.initial) != 1:
        return False
    for q in range(A.n):
        for a in A.alphabet:
            if len(A.targets(q, a)) != 1:
                return False
    return True


def nfa_trim(A):
    """Same language, restricted to reachable and co-reachable states."""
    adj = {}
    radj = {}
    for (q, _a), ts in A.delta.items():
        adj.setdefault(q, set()).update(ts)
        for t in ts:
            radj.setdefault(t, set()).add(q)
    reach = set(A.initial)
    frontier = list(reach)
    while frontier:
        for t in adj.get(frontier.pop(), ()):
            if t not in reach:
                reach.add(t)
                frontier.append(t)
    co = set(A.accepting)
    frontier = list(co)
    while frontier:
        for t in radj.get(frontier.pop(), ()):
            if t not in co:
                co.add(t)
                frontier.append(t)
    keep = reach & co
    if not keep:
        return Nfa(A.alphabet, 1, frozenset([0]), frozenset(), {})
    if len(keep) == A.n:
        return A
    index = {q: i for i, q in enumerate(sorted(keep))}
    delta = {}
    for (q, a), ts in A.delta.items():
        if q in index:
            ts2 = frozenset(index[t] for t in ts if t in index)
            if ts2:
                delta[(index[q], a)] = ts2
    return Nfa(A.alphabet, len(index),
               frozenset(index[q] for q in A.initial if q in index),
               frozenset(index[q] for q in A.accepting if q in index), delta)


# ------------------------------------------------------------------- WFAs


@dataclass
class Wfa:
    semiring: object
    alphabet: tuple
    n: int
    init: dict  # q -> weight
    ter: dict  # q -> weight
    edges: dict  # letter -> list of (p, q, weight)

    def stats(self):
        return {"states": self.n,
                "transitions": sum(len(v) for v in self.edges.values())}


def _prune_vec(sr, v):
    return {q: w for q, w in v.items() if w != sr.zero}


def wfa_behavior(A, word):
    sr = A.semiring
    v = dict(A.init)
    for a in word:
        if a not in A.alphabet:
            raise ValidationError("letter %r outside the automaton alphabet" % (a,))
        nxt = {}
        for p, q, wt in A.edges.get(a, ()):
            if p in v:
                x = sr.mul(v[p], wt)
                nxt[q] = sr.add(nxt[q], x) if q in nxt else x
        v = _prune_vec(sr, nxt)
        if not v:
            return sr.zero
    acc = sr.zero
    for q, w in v.items():
        if q in A.ter:
            acc = sr.add(acc, sr.mul(w, A.ter[q]))
    return acc


def _check_compatible(A, B):
    _check_same_alphabet(A.alphabet, B.alphabet)
    if A.semiring.name != B.semiring.name:
        raise ValidationError("semiring mismatch between automata")


def _merge_edges(sr, triples):
    """Adds up parallel edges so each (p,a,q) appears once."""
    acc = {}
    for p, q, w in triples:
        key = (p, q)
        acc[key] = sr.add(acc[key], w) if key in acc else w
    return [(p, q, w) for (p, q), w in sorted(acc.items()) if w != sr.zero]


def wfa_sum(A, B):
    _check_compatible(A, B)
    sr = A.semiring
    off = A.n
    init = dict(A.init)
    ter = dict(A.ter)
    for q, w in B.init.items():
        init[q + off] = w
    for q, w in B.ter.items():
        ter[q + off] = w
    edges = {}
    for a in A.alphabet:
        es = list(A.edges.get(a, []))
        es += [(p + off, q + off, w) for p, q, w in B.edges.get(a, [])]
        if es:
            edges[a] = es
    return Wfa(sr, A.alphabet, A.n + B.n, _prune_vec(sr, init), _prune_vec(sr, ter), edges)


def _pair(n2, p, q):
    return p * n2 + q


def wfa_hadamard(A, B):
    _check_compatible(A, B)
    sr = A.semiring
    init = {}
    for p, wp in A.init.items():
        for q, wq in B.init.items():
            init[_pair(B.n, p, q)] = sr.mul(wp, wq)
    ter = {}
    for p, wp in A.ter.items():
        for q, wq in B.ter.items():
            ter[_pair(B.n, p, q)] = sr.mul(wp, wq)
    edges = {}
    for a in A.alphabet:
        es = []
        for p, p2, w1 in A.edges.get(a, []):
            for q, q2, w2 in B.edges.get(a, []):
                es.append((_pair(B.n, p, q), _pair(B.n, p2, q2), sr.mul(w1, w2)))
        if es:
            edges[a] = _merge_edges(sr, es)
    return Wfa(sr, A.alphabet, A.n * B.n, _prune_vec(sr, init), _prune_vec(sr, ter), edges)


def _eps_value(A):
    sr = A.semiring
    acc = sr.zero
    for q, w in A.init.items():
        if q in A.ter:
            acc = sr.add(acc, sr.mul(w, A.ter[q]))
    return acc


def wfa_cauchy(A, B):
    """States Q1 ⊎ Q2; bridging edge (p, a, q') = ter1(p) · Σ_s init2(s)·wt2(s,a,q')."""
    _check_compatible(A, B)
    sr = A.semiring
    off = A.n
    e2 = _eps_value(B)
    init = dict(A.init)
    ter = {q + off: w for q, w in B.ter.items()}
    for q, w in A.ter.items():
        ter[q] = sr.mul(w, e2)
    # B's first step pulled back to its initial distribution
    first = {}  # a -> list of (q', weight)
    for a, es in B.edges.items():
        lst = {}
        for s, q2, w in es:
            if s in B.init:
                x = sr.mul(B.init[s], w)
                lst[q2] = sr.add(lst[q2], x) if q2 in lst else x
        if lst:
            first[a] = lst
    edges = {}
    for a in A.alphabet:
        es = list(A.edges.get(a, []))
        es += [(p + off, q + off, w) for p, q, w in B.edges.get(a, [])]
        for p, wt in A.ter.items():
            for q2, w in first.get(a, {}).items():
                es.append((p, q2 + off, sr.mul(wt, w)))
        if es:
            edges[a] = _merge_edges(sr, es)
    return Wfa(sr, A.alphabet, A.n + B.n, _prune_vec(sr, init), _prune_vec(sr, ter), edges)


def wfa_shuffle(A, B):
    _check_compatible(A, B)
    sr = A.semiring
    init = {}
    for p, wp in A.init.items():
        for q, wq in B.init.items():
            init[_pair(B.n, p, q)] = sr.mul(wp, wq)
    ter = {}
    for p, wp in A.ter.items():
        for q, wq in B.ter.items():
            ter[_pair(B.n, p, q)] = sr.mul(wp, wq)
    edges = {}
    for a in A.alphabet:
        es = []
        for p, p2, w in A.edges.get(a, []):
            for q in range(B.n):
                es.append((_pair(B.n, p, q), _pair(B.n, p2, q), w))
        for q, q2, w in B.edges.get(a, []):
            for p in range(A.n):
                es.append((_pair(B.n, p, q), _pair(B.n, p, q2), w))
        if es:
            edges[a] = _merge_edges(sr, es)
    return Wfa(sr, A.alphabet, A.n * B.n, _prune_vec(sr, init), _prune_vec(sr, ter), edges)


def characteristic_wfa(A, semiring):
    """0/1 weighting of a deterministic complete automaton's language."""
    if not nfa_is_deterministic_complete(A):
        raise ValidationError("characteristic weighting needs a deterministic "
                              "complete automaton")
    sr = semiring
    q0 = next(iter(A.initial))
    edges = {}
    for (q, a), ts in A.delta.items():
        for t in ts:
            edges.setdefault(a, []).append((q, t, sr.one))
    for a in edges:
        edges[a].sort()
    return Wfa(sr, A.alphabet, A.n, {q0: sr.one},
               {q: sr.one for q in A.accepting}, edges)


def wfa_trim(A):
    """Drops states unreachable from init or that cannot reach ter."""
    sr = A.semiring
    fwd = {}
    bwd = {}
    for a, es in A.edges.items():
        for p, q, w in es:
            if w != sr.zero:
                fwd.setdefault(p, set()).add(q)
                bwd.setdefault(q, set()).add(p)

    def closure(seed, adj):
        seen = set(seed)
        stack = list(seed)
        while stack:
            q = stack.pop()
            for t in adj.get(q, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    reach = closure(set(A.init), fwd)
    coreach = closure(set(A.ter), bwd)
    keep = sorted(reach & coreach)
    idx = {q: i for i, q in enumerate(keep)}
    edges = {}
    for a, es in A.edges.items():
        lst = [(idx[p], idx[q], w) for p, q, w in es if p in idx and q in idx]
        if lst:
            edges[a] = sorted(lst)
    return Wfa(sr, A.alphabet, len(keep),
               {idx[q]: w for q, w in A.init.items() if q in idx},
               {idx[q]: w for q, w in A.ter.items() if q in idx}, edges)


# ----------------------------------------------------------- serialization


def _letter_str(a):
    if isinstance(a, frozenset):
        return format_letter(a)
    return str(a)


def serialize_wfa(A):
    sr = A.semiring
    out = ["wfa 1", "semiring %s" % sr.name, "states %d" % A.n]
    for a in A.alphabet:
        out.append("letter %s" % _letter_str(a))
    for q in sorted(A.init):
        out.append("in %d %s" % (q, sr.format_value(A.init[q])))
    for q in sorted(A.ter):
        out.append("ter %d %s" % (q, sr.format_value(A.ter[q])))
    index = {a: i for i, a in enumerate(A.alphabet)}
    triples = []
    for a, es in A.edges.items():
        for p, q, w in es:
            triples.append((index[a], p, q, w, a))
    triples.sort(key=lambda t: t[:3])
    for ai, p, q, w, a in triples:
        out.append("%d --%s[%s]--> %d" % (p, _letter_str(a), sr.format_value(w), q))
    return "\n".join(out) + "\n"


def _parse_letter_text(s):
    s = s.strip()
    if s.startswith("{"):
        from .system import parse_word
        word = parse_word(s)
        if len(word) != 1:
            raise ValidationError("expected one interaction, got %r" % s)
        return word[0]
    return s


_TRANS_RE = None


def parse_wfa(text):
    import re
    global _TRANS_RE
    if _TRANS_RE is None:
        _TRANS_RE = re.compile(r"^(\d+) --(.*)\[([^\[\]]*)\]--> (\d+)$")
    lines = [l.split("#", 1)[0].strip() for l in text.split("\n")]
    lines = [l for l in lines if l]
    if not lines or lines[0].split() != ["wfa", "1"]:
        raise ValidationError("expected header line 'wfa 1'")
    sr = None
    n = None
    alphabet = []
    init = {}
    ter = {}
    edges = {}
    for line in lines[1:]:
        m = _TRANS_RE.match(line)
        if m:
            if sr is None:
                raise ValidationError("transition before the semiring line")
            a = _parse_letter_text(m.group(2))
            edges.setdefault(a, []).append(
                (int(m.group(1)), int(m.group(4)), sr.parse_value(m.group(3))))
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "semiring":
            sr = builtin(rest)
        elif head == "states":
            n = int(rest)
        elif head == "letter":
            alphabet.append(_parse_letter_text(rest))
        elif head in ("in", "ter") and sr is not None:
            q, _, val = rest.partition(" ")
            (init if head == "in" else ter)[int(q)] = sr.parse_value(val)
        else:
            raise ValidationError("bad automaton line: %r" % line)
    if sr is None or n is None:
        raise ValidationError("automaton file lacks semiring/states header")
    for a in edges:
        if a not in alphabet:
            raise ValidationError("transition uses undeclared letter %r" % (a,))
        edges[a].sort()
    return Wfa(sr, tuple(alphabet), n, init, ter, edges)
