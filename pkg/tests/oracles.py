"""Brute-force reference implementations used to freeze expected values.

Everything in this file recomputes results by direct enumeration of the
defining clauses: interactions are filtered out of the full powerset, shuffles
are merged index by index, satisfaction and evaluation walk the clauses with
no memoization, and automaton behavior is a sum over explicit state paths.
None of it shares code with the package under test.

Oracle formulas are plain tuples:

    ('true',)
    ('port', type_name, port_name, arg)      arg = ('v', var) | ('i', instance)
    ('not', f)  ('or', f, g)  ('and', f, g)
    ('cat', f, g)  ('shuf', f, g)
    ('eq', x, y)  ('neq', x, y)
    ('q', kind, var, type_name, body)        kind in E A Ec Ac Es As
    ('const', k)
    ('wplus', f, g)  ('wtimes', f, g)  ('wcat', f, g)  ('wshuf', f, g)
    ('wq', kind, var, type_name, body)       kind in S P Sc Pc Ss Ps
    ('hash', ((type, port, arg), ...))       exact-interaction letter
    ('hashw', ((type, port, arg), ...))      same, times the port weights

Letters are frozensets of (type_name, port_name, instance) triples and words
are tuples of letters.
"""

import itertools
from collections import Counter
from fractions import Fraction


class OracleEnv:
    """Counts, weights and the empty-word strictness flag."""

    def __init__(self, r, weights, strict=True, zero=0, one=1,
                 add=None, mul=None, memo=False):
        self.r = dict(r)                # type name -> instance count
        self.weights = dict(weights)    # (type name, port name) -> value
        self.strict = strict
        self.zero = zero
        self.one = one
        self.add = add if add is not None else (lambda a, b: a + b)
        self.mul = mul if mul is not None else (lambda a, b: a * b)
        # Cache of identical (subformula, word, assignment) calls.  Purely an
        # execution cache; the clauses themselves stay brute force.
        self.memo = {} if memo else None


# ---------------------------------------------------------------------------
# words, shuffles, splits

def interactions_by_powerset(port_instances):
    """All valid interactions, found the slow way: filter the full powerset.

    port_instances: iterable of (type, port, instance) triples.
    Valid: nonempty, and at most one port per component instance.
    """
    pis = sorted(port_instances)
    out = []
    for n in range(1, len(pis) + 1):
        for combo in itertools.combinations(pis, n):
            seen = set()
            ok = True
            for (t, p, j) in combo:
                if (t, j) in seen:
                    ok = False
                    break
                seen.add((t, j))
            if ok:
                out.append(frozenset(combo))
    return out


def shuffle_words(w, u):
    """Multiset of interleavings of two words, as a Counter."""
    if not w:
        return Counter({tuple(u): 1})
    if not u:
        return Counter({tuple(w): 1})
    out = Counter()
    for rest, n in shuffle_words(w[1:], u).items():
        out[(w[0],) + rest] += n
    for rest, n in shuffle_words(w, u[1:]).items():
        out[(u[0],) + rest] += n
    return out


def two_splits(w):
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def k_splits(w, k):
    """All ordered splits of w into exactly k (possibly empty) parts."""
    if k == 0:
        return [()] if not w else []
    if k == 1:
        return [(w,)]
    out = []
    for i in range(len(w) + 1):
        for rest in k_splits(w[i:], k - 1):
            out.append((w[:i],) + rest)
    return out


def colorings(w, k):
    """All ways to scatter w onto k in-order subsequences (parts may be empty).

    Yields k-tuples of words.  Each position of w is assigned one color, so
    interleaving decompositions are counted with multiplicity.
    """
    for assign in itertools.product(range(k), repeat=len(w)):
        parts = [[] for _ in range(k)]
        for pos, c in enumerate(assign):
            parts[c].append(w[pos])
        yield tuple(tuple(p) for p in parts)


def nonempty_subsets(n):
    """Nonempty subsets of [1..n] in increasing binary order."""
    out = []
    for mask in range(1, 1 << n):
        out.append(tuple(j + 1 for j in range(n) if mask >> j & 1))
    return out


def all_words(letters, maxlen):
    for n in range(maxlen + 1):
        for w in itertools.product(letters, repeat=n):
            yield w


# ---------------------------------------------------------------------------
# formula classification

PIL_TAGS = ('true', 'port', 'hash')
FO_TAGS = ('eq', 'neq', 'q', 'wq')


def is_pil_like(f):
    tag = f[0]
    if tag in PIL_TAGS:
        return True
    if tag == 'not':
        return is_pil_like(f[1])
    if tag in ('or', 'and'):
        return is_pil_like(f[1]) and is_pil_like(f[2])
    return False


def contains_fo(f):
    tag = f[0]
    if tag in FO_TAGS:
        return True
    if tag in ('not',):
        return contains_fo(f[1])
    if tag in ('or', 'and', 'cat', 'shuf', 'wplus', 'wtimes', 'wcat', 'wshuf'):
        return contains_fo(f[1]) or contains_fo(f[2])
    return False


# ---------------------------------------------------------------------------
# satisfaction

def resolve(arg, sig):
    if arg[0] == 'i':
        return arg[1]
    return sig[arg[1]]


def hash_letter(args, sig):
    return frozenset((t, p, resolve(a, sig)) for (t, p, a) in args)


def pil_letter(f, letter, sig, env):
    tag = f[0]
    if tag == 'true':
        return True
    if tag == 'port':
        return (f[1], f[2], resolve(f[3], sig)) in letter
    if tag == 'hash':
        return letter == hash_letter(f[1], sig)
    if tag == 'not':
        return not pil_letter(f[1], letter, sig, env)
    if tag == 'or':
        return pil_letter(f[1], letter, sig, env) or pil_letter(f[2], letter, sig, env)
    if tag == 'and':
        return pil_letter(f[1], letter, sig, env) and pil_letter(f[2], letter, sig, env)
    raise ValueError(tag)


def sat(f, w, sig, env):
    if env.memo is None:
        return _sat(f, w, sig, env)
    key = ('s', f, w, tuple(sorted(sig.items())))
    hit = env.memo.get(key)
    if hit is None:
        hit = _sat(f, w, sig, env)
        env.memo[key] = hit
    return hit


def _sat(f, w, sig, env):
    tag = f[0]
    if f == ('true',):
        return True
    if is_pil_like(f):
        return len(w) == 1 and pil_letter(f, w[0], sig, env)
    if tag == 'eq':
        return sig[f[1]] == sig[f[2]]
    if tag == 'neq':
        return sig[f[1]] != sig[f[2]]
    if tag == 'q':
        return sat_quant(f, w, sig, env)
    # compound connective: EPIL-layer nodes are strict on the empty word
    if env.strict and not contains_fo(f) and len(w) == 0:
        return False
    if tag == 'not':
        return not sat(f[1], w, sig, env)
    if tag == 'or':
        return sat(f[1], w, sig, env) or sat(f[2], w, sig, env)
    if tag == 'and':
        return sat(f[1], w, sig, env) and sat(f[2], w, sig, env)
    if tag == 'cat':
        return any(sat(f[1], w1, sig, env) and sat(f[2], w2, sig, env)
                   for (w1, w2) in two_splits(w))
    if tag == 'shuf':
        return any(sat(f[1], w1, sig, env) and sat(f[2], w2, sig, env)
                   for (w1, w2) in set(colorings(w, 2)))
    raise ValueError(tag)


def sat_quant(f, w, sig, env):
    _, kind, var, tname, body = f
    n = env.r[tname]
    insts = range(1, n + 1)
    if kind == 'E':
        return any(sat(body, w, {**sig, var: j}, env) for j in insts)
    if kind == 'A':
        return all(sat(body, w, {**sig, var: j}, env) for j in insts)
    if kind == 'Ec':
        for J in nonempty_subsets(n):
            for parts in k_splits(w, len(J)):
                if all(sat(body, parts[idx], {**sig, var: j}, env)
                       for idx, j in enumerate(J)):
                    return True
        return False
    if kind == 'Ac':
        for parts in k_splits(w, n):
            if all(sat(body, parts[j - 1], {**sig, var: j}, env) for j in insts):
                return True
        return False
    if kind == 'Es':
        for J in nonempty_subsets(n):
            for parts in set(colorings(w, len(J))):
                if all(sat(body, parts[idx], {**sig, var: j}, env)
                       for idx, j in enumerate(J)):
                    return True
        return False
    if kind == 'As':
        for parts in set(colorings(w, n)):
            if all(sat(body, parts[j - 1], {**sig, var: j}, env) for j in insts):
                return True
        return False
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# weighted evaluation

WEIGHTED_TAGS = ('const', 'hashw', 'wplus', 'wtimes', 'wcat', 'wshuf', 'wq')


def is_weighted(f):
    tag = f[0]
    if tag in WEIGHTED_TAGS:
        return True
    return False


def eval_w(f, w, sig, env):
    if env.memo is None:
        return _eval_w(f, w, sig, env)
    key = ('e', f, w, tuple(sorted(sig.items())))
    hit = env.memo.get(key)
    if hit is None:
        hit = _eval_w(f, w, sig, env)
        env.memo[key] = hit
    return hit


def _eval_w(f, w, sig, env):
    tag = f[0]
    if tag == 'const':
        return f[1]
    if not is_weighted(f):
        return env.one if sat(f, w, sig, env) else env.zero
    if tag == 'hashw':
        if len(w) == 1 and w[0] == hash_letter(f[1], sig):
            v = env.one
            for (t, p, _a) in f[1]:
                v = env.mul(v, env.weights[(t, p)])
            return v
        return env.zero
    if tag == 'wplus':
        return env.add(eval_w(f[1], w, sig, env), eval_w(f[2], w, sig, env))
    if tag == 'wtimes':
        return env.mul(eval_w(f[1], w, sig, env), eval_w(f[2], w, sig, env))
    if tag == 'wcat':
        acc = env.zero
        for (w1, w2) in two_splits(w):
            acc = env.add(acc, env.mul(eval_w(f[1], w1, sig, env),
                                       eval_w(f[2], w2, sig, env)))
        return acc
    if tag == 'wshuf':
        acc = env.zero
        for (w1, w2) in colorings(w, 2):
            acc = env.add(acc, env.mul(eval_w(f[1], w1, sig, env),
                                       eval_w(f[2], w2, sig, env)))
        return acc
    if tag == 'wq':
        return eval_quant(f, w, sig, env)
    raise ValueError(tag)


def eval_quant(f, w, sig, env):
    _, kind, var, tname, body = f
    n = env.r[tname]
    insts = range(1, n + 1)
    if kind == 'S':
        acc = env.zero
        for j in insts:
            acc = env.add(acc, eval_w(body, w, {**sig, var: j}, env))
        return acc
    if kind == 'P':
        acc = env.one
        for j in insts:
            acc = env.mul(acc, eval_w(body, w, {**sig, var: j}, env))
        return acc
    if kind == 'Sc':
        acc = env.zero
        for J in nonempty_subsets(n):
            for parts in k_splits(w, len(J)):
                term = env.one
                for idx, j in enumerate(J):
                    term = env.mul(term, eval_w(body, parts[idx],
                                                {**sig, var: j}, env))
                acc = env.add(acc, term)
        return acc
    if kind == 'Pc':
        acc = env.zero
        for parts in k_splits(w, n):
            term = env.one
            for j in insts:
                term = env.mul(term, eval_w(body, parts[j - 1],
                                            {**sig, var: j}, env))
            acc = env.add(acc, term)
        return acc
    if kind == 'Ss':
        acc = env.zero
        for J in nonempty_subsets(n):
            for parts in colorings(w, len(J)):
                term = env.one
                for idx, j in enumerate(J):
                    term = env.mul(term, eval_w(body, parts[idx],
                                                {**sig, var: j}, env))
                acc = env.add(acc, term)
        return acc
    if kind == 'Ps':
        acc = env.zero
        for parts in colorings(w, n):
            term = env.one
            for j in insts:
                term = env.mul(term, eval_w(body, parts[j - 1],
                                            {**sig, var: j}, env))
            acc = env.add(acc, term)
        return acc
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# series operations on explicit behaviors (dict word -> value)

def series_sum(b1, b2, w, env):
    return env.add(b1.get(w, env.zero), b2.get(w, env.zero))


def series_hadamard(b1, b2, w, env):
    return env.mul(b1.get(w, env.zero), b2.get(w, env.zero))


def series_cauchy(b1, b2, w, env):
    acc = env.zero
    for (w1, w2) in two_splits(w):
        acc = env.add(acc, env.mul(b1.get(w1, env.zero), b2.get(w2, env.zero)))
    return acc


def series_shuffle(b1, b2, w, env):
    acc = env.zero
    for (w1, w2) in colorings(w, 2):
        acc = env.add(acc, env.mul(b1.get(w1, env.zero), b2.get(w2, env.zero)))
    return acc


# ---------------------------------------------------------------------------
# automaton behavior by path enumeration

def behavior_by_paths(states, init, ter, edges, word, env):
    """Sum over all state paths of in(q0) * wt(edges) * ter(qn).

    init, ter: dict state -> value; edges: dict (q, letter, q') -> value.
    """
    total = env.zero
    def walk(q, i, acc):
        nonlocal total
        if i == len(word):
            if q in ter:
                total = env.add(total, env.mul(acc, ter[q]))
            return
        a = word[i]
        for q2 in states:
            wt = edges.get((q, a, q2))
            if wt is not None:
                walk(q2, i + 1, env.mul(acc, wt))
    for q0, v in init.items():
        walk(q0, 0, v)
    return total


FRACTION_ENV = OracleEnv(r={}, weights={}, zero=Fraction(0), one=Fraction(1))
