"""Denotational semantics: satisfaction for the boolean layers, series
evaluation for the weighted layer.

Empty-word policy (matching the compiled automata): single-interaction
formulas hold only on one-letter words, except `true` which holds on every
word; negated word formulas never hold on the empty word; other unweighted
word compounds without first-order features require a nonempty word unless
`strict=False` (the compositional reading).  First-order and weighted
clauses are total — in particular constants weigh the empty word.
"""

from collections import Counter
from itertools import product

from .errors import ValidationError
from . import formulas as F
from .system import PortInstance


# ---------------------------------------------------------------- word helpers


def two_splits(w):
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def k_splits(w, k):
    if k == 1:
        return [(w,)]
    out = []
    for i in range(len(w) + 1):
        for rest in k_splits(w[i:], k - 1):
            out.append((w[:i],) + rest)
    return out


def colorings(w, k):
    """All assignments of positions to k parts; yields tuples of subwords.
    Distinct assignments with equal subwords are yielded again: that is the
    shuffle multiplicity."""
    n = len(w)
    for assign in product(range(k), repeat=n):
        parts = [[] for _ in range(k)]
        for pos, c in enumerate(assign):
            parts[c].append(w[pos])
        yield tuple(tuple(p) for p in parts)


def nonempty_subsets(m):
    """Nonempty subsets of {1..m} in increasing binary order."""
    for mask in range(1, 1 << m):
        yield [j + 1 for j in range(m) if mask & (1 << j)]


def shuffle_words(w1, w2):
    """Multiset of interleavings of two words, as a Counter."""
    out = Counter()

    def go(a, b, acc):
        if not a and not b:
            out[tuple(acc)] += 1
            return
        if a:
            go(a[1:], b, acc + [a[0]])
        if b:
            go(a, b[1:], acc + [b[0]])

    go(tuple(w1), tuple(w2), [])
    return out


# ---------------------------------------------------------------- evaluation


class EvalContext:
    def __init__(self, view, strict=True, memo=True):
        self.view = view
        self.semiring = view.system.semiring
        self.strict = strict
        self.memo = {} if memo else None
        self._fv = {}
        self._fo = {}
        self._pil = {}

    def fv(self, node):
        key = id(node)
        if key not in self._fv:
            self._fv[key] = frozenset(F.free_variables(node))
        return self._fv[key]

    def fo(self, node):
        key = id(node)
        if key not in self._fo:
            self._fo[key] = F.contains_fo(node)
        return self._fo[key]

    def pil(self, node):
        key = id(node)
        if key not in self._pil:
            self._pil[key] = F.is_pil(node)
        return self._pil[key]

    def key(self, tag, node, w, sigma):
        sig = tuple(sorted((v, sigma[v]) for v in self.fv(node) if v in sigma))
        return (tag, id(node), w, sig)

    def resolve_arg(self, atom, sigma):
        kind = atom.arg[0]
        if kind == "any":
            return None
        if kind == "var":
            v = atom.arg[1]
            if v not in sigma:
                raise ValidationError("unbound variable %r" % v, atom.span)
            j = sigma[v]
        else:
            j = atom.arg[1]
        i = self.view.system.type_index(atom.ctype)
        if not 1 <= j <= self.view.r[i]:
            raise ValidationError(
                "instance %d out of range for type %r (r=%d)"
                % (j, atom.ctype, self.view.r[i]), atom.span)
        return j

    def macro_letter(self, node, sigma):
        """Ground letter named by a hash macro, or None if it repeats an
        instance (then no interaction matches)."""
        ports = []
        used = set()
        for a in node.atoms:
            j = self.resolve_arg(a, sigma)
            if (a.ctype, j) in used:
                return None
            used.add((a.ctype, j))
            ports.append(PortInstance(a.ctype, a.port, j))
        return frozenset(ports)

    def macro_weight(self, node, sigma):
        sr = self.semiring
        w = sr.one
        for a in node.atoms:
            t = self.view.system.types[self.view.system.type_index(a.ctype)]
            w = sr.mul(w, t.effective_weight(a.port, sr.zero))
        return w


def _pil_letter(ctx, f, letter, sigma):
    if isinstance(f, F.TrueF):
        return True
    if isinstance(f, F.Atom):
        j = ctx.resolve_arg(f, sigma)
        if j is None:
            return any(pi.ctype == f.ctype and pi.port == f.port for pi in letter)
        return PortInstance(f.ctype, f.port, j) in letter
    if isinstance(f, F.Hash):
        want = ctx.macro_letter(f, sigma)
        return want is not None and letter == want
    if isinstance(f, F.Not):
        return not _pil_letter(ctx, f.sub, letter, sigma)
    if isinstance(f, F.And):
        return _pil_letter(ctx, f.left, letter, sigma) and _pil_letter(ctx, f.right, letter, sigma)
    if isinstance(f, F.Or):
        return _pil_letter(ctx, f.left, letter, sigma) or _pil_letter(ctx, f.right, letter, sigma)
    raise ValidationError("not a single-interaction formula: %s" % type(f).__name__)


def _sat(ctx, f, w, sigma):
    if isinstance(f, F.TrueF):
        return True
    if ctx.pil(f):
        return len(w) == 1 and _pil_letter(ctx, f, w[0], sigma)
    if ctx.memo is not None:
        key = ctx.key("s", f, w, sigma)
        if key in ctx.memo:
            return ctx.memo[key]
        v = _sat_raw(ctx, f, w, sigma)
        ctx.memo[key] = v
        return v
    return _sat_raw(ctx, f, w, sigma)


def _sat_raw(ctx, f, w, sigma):
    if isinstance(f, F.Not):
        if len(w) == 0:
            return False
        return not _sat(ctx, f.sub, w, sigma)
    if isinstance(f, (F.Or, F.And, F.Cat, F.Shuf)):
        if len(w) == 0 and ctx.strict and not ctx.fo(f):
            return False
        if isinstance(f, F.Or):
            return _sat(ctx, f.left, w, sigma) or _sat(ctx, f.right, w, sigma)
        if isinstance(f, F.And):
            return _sat(ctx, f.left, w, sigma) and _sat(ctx, f.right, w, sigma)
        if isinstance(f, F.Cat):
            return any(_sat(ctx, f.left, w1, sigma) and _sat(ctx, f.right, w2, sigma)
                       for w1, w2 in two_splits(w))
        return any(_sat(ctx, f.left, w1, sigma) and _sat(ctx, f.right, w2, sigma)
                   for w1, w2 in colorings(w, 2))
    if isinstance(f, F.Eq):
        return _lookup(sigma, f.x) == _lookup(sigma, f.y)
    if isinstance(f, F.Neq):
        return _lookup(sigma, f.x) != _lookup(sigma, f.y)
    if isinstance(f, F.Quant):
        return _sat_quant(ctx, f, w, sigma)
    if F.is_weighted(f):
        raise ValidationError("weighted formula where a boolean one is needed")
    raise ValidationError("cannot evaluate %s" % type(f).__name__)


def _lookup(sigma, v):
    if v not in sigma:
        raise ValidationError("unbound variable %r" % v)
    return sigma[v]


def _sat_quant(ctx, f, w, sigma):
    i = ctx.view.system.type_index(f.ctype)
    m = ctx.view.r[i]
    body = f.body

    def at(j, part):
        return _sat(ctx, body, part, dict(sigma, **{f.var: j}))

    if f.kind == "E":
        return any(at(j, w) for j in range(1, m + 1))
    if f.kind == "A":
        return all(at(j, w) for j in range(1, m + 1))
    if f.kind == "Ec":
        return any(all(at(j, part) for j, part in zip(J, parts))
                   for J in nonempty_subsets(m)
                   for parts in k_splits(w, len(J)))
    if f.kind == "Ac":
        return any(all(at(j + 1, part) for j, part in enumerate(parts))
                   for parts in k_splits(w, m))
    if f.kind == "Es":
        return any(all(at(j, part) for j, part in zip(J, parts))
                   for J in nonempty_subsets(m)
                   for parts in colorings(w, len(J)))
    if f.kind == "As":
        return any(all(at(j + 1, part) for j, part in enumerate(parts))
                   for parts in colorings(w, m))
    raise ValidationError("unknown quantifier %r" % f.kind)


def _eval(ctx, f, w, sigma):
    if ctx.memo is not None:
        key = ctx.key("e", f, w, sigma)
        if key in ctx.memo:
            return ctx.memo[key]
        v = _eval_raw(ctx, f, w, sigma)
        ctx.memo[key] = v
        return v
    return _eval_raw(ctx, f, w, sigma)


def _eval_raw(ctx, f, w, sigma):
    sr = ctx.semiring
    if isinstance(f, F.Const):
        return f.value
    if isinstance(f, F.HashW):
        want = ctx.macro_letter(f, sigma)
        if want is None or len(w) != 1 or w[0] != want:
            return sr.zero
        return ctx.macro_weight(f, sigma)
    if not F.is_weighted(f):
        return sr.one if _sat(ctx, f, w, sigma) else sr.zero
    if isinstance(f, F.WPlus):
        return sr.add(_eval(ctx, f.left, w, sigma), _eval(ctx, f.right, w, sigma))
    if isinstance(f, F.WTimes):
        return sr.mul(_eval(ctx, f.left, w, sigma), _eval(ctx, f.right, w, sigma))
    if isinstance(f, F.WCat):
        acc = sr.zero
        for w1, w2 in two_splits(w):
            acc = sr.add(acc, sr.mul(_eval(ctx, f.left, w1, sigma),
                                     _eval(ctx, f.right, w2, sigma)))
        return acc
    if isinstance(f, F.WShuf):
        acc = sr.zero
        for w1, w2 in colorings(w, 2):
            acc = sr.add(acc, sr.mul(_eval(ctx, f.left, w1, sigma),
                                     _eval(ctx, f.right, w2, sigma)))
        return acc
    if isinstance(f, F.WQuant):
        return _eval_quant(ctx, f, w, sigma)
    raise ValidationError("cannot evaluate %s" % type(f).__name__)


def _eval_quant(ctx, f, w, sigma):
    sr = ctx.semiring
    i = ctx.view.system.type_index(f.ctype)
    m = ctx.view.r[i]
    body = f.body

    def at(j, part):
        return _eval(ctx, body, part, dict(sigma, **{f.var: j}))

    if f.kind == "Sum":
        acc = sr.zero
        for j in range(1, m + 1):
            acc = sr.add(acc, at(j, w))
        return acc
    if f.kind == "Prod":
        acc = sr.one
        for j in range(1, m + 1):
            acc = sr.mul(acc, at(j, w))
        return acc
    if f.kind == "SumC":
        acc = sr.zero
        for J in nonempty_subsets(m):
            for parts in k_splits(w, len(J)):
                term = sr.one
                for j, part in zip(J, parts):
                    term = sr.mul(term, at(j, part))
                acc = sr.add(acc, term)
        return acc
    if f.kind == "ProdC":
        acc = sr.zero
        for parts in k_splits(w, m):
            term = sr.one
            for j, part in enumerate(parts):
                term = sr.mul(term, at(j + 1, part))
            acc = sr.add(acc, term)
        return acc
    if f.kind == "SumS":
        acc = sr.zero
        for J in nonempty_subsets(m):
            for parts in colorings(w, len(J)):
                term = sr.one
                for j, part in zip(J, parts):
                    term = sr.mul(term, at(j, part))
                acc = sr.add(acc, term)
        return acc
    if f.kind == "ProdS":
        acc = sr.zero
        for parts in colorings(w, m):
            term = sr.one
            for j, part in enumerate(parts):
                term = sr.mul(term, at(j + 1, part))
            acc = sr.add(acc, term)
        return acc
    raise ValidationError("unknown weighted quantifier %r" % f.kind)


# ---------------------------------------------------------------- entry points


def _entry(view, formula, word, sigma, strict):
    ctx = EvalContext(view, strict=strict)
    sigma = dict(sigma or {})
    missing = F.free_variables(formula) - set(sigma)
    if missing:
        raise ValidationError("free variables need an assignment: %s"
                              % ", ".join(sorted(missing)))
    return ctx, tuple(word), sigma


def pil_satisfies(view, formula, word, sigma=None):
    ctx, w, s = _entry(view, formula, word, sigma, True)
    if isinstance(formula, F.TrueF):
        return True
    if not F.is_pil(formula):
        raise ValidationError("not a single-interaction formula")
    return len(w) == 1 and _pil_letter(ctx, formula, w[0], s)


def epil_satisfies(view, formula, word, sigma=None, strict=True):
    ctx, w, s = _entry(view, formula, word, sigma, strict)
    if not F.is_epil(formula):
        raise ValidationError("not an interaction-word formula")
    return _sat(ctx, formula, w, s)


def foeil_satisfies(view, formula, word, sigma=None, strict=True):
    ctx, w, s = _entry(view, formula, word, sigma, strict)
    if F.is_weighted(formula):
        raise ValidationError("weighted formula: use wfoeil_eval")
    return _sat(ctx, formula, w, s)


def wepil_eval(view, formula, word, sigma=None, strict=True):
    return wfoeil_eval(view, formula, word, sigma, strict)


def wfoeil_eval(view, formula, word, sigma=None, strict=True):
    ctx, w, s = _entry(view, formula, word, sigma, strict)
    return _eval(ctx, formula, w, s)
