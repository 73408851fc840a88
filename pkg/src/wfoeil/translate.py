"""Compilation of formulas to automata over an explicit interaction alphabet.

Unweighted formulas become NFAs: single-interaction formulas are two-state
letter automata, `true` is the one-state complete accepting automaton,
quantifiers expand to unions/intersections/concatenations/shuffles over
instance indices (existential * and ~ quantifiers additionally sum over
nonempty index subsets).  Weighted formulas become WFAs; embedded boolean
subformulas are determinized, completed and weighted 0/1 — determinism is
what keeps the characteristic series correct over non-idempotent semirings.

The empty-word policy mirrors the evaluator: negated word formulas and (in
strict mode) first-order-free compounds have the empty word stripped.

Budgets: translation aborts with a ResourceError naming the offending
subformula once an intermediate automaton exceeds the state or transition
budget.
"""

from .errors import ValidationError, ResourceError
from . import formulas as F
from . import automata as AU
from .semantics import EvalContext, _pil_letter, nonempty_subsets

DEFAULT_STATE_BUDGET = AU.DEFAULT_STATE_BUDGET
DEFAULT_EDGE_BUDGET = 5000000


def _nfa_edge_count(A):
    return sum(len(ts) for ts in A.delta.values())


def _wfa_edge_count(A):
    return sum(len(es) for es in A.edges.values())


def strip_epsilon(A):
    """Same language minus the empty word."""
    if not (A.initial & A.accepting):
        return A
    m = A.n
    delta = dict(A.delta)
    for a in A.alphabet:
        ts = frozenset(t for q in A.initial for t in A.targets(q, a))
        if ts:
            delta[(m, a)] = ts
    return AU.Nfa(A.alphabet, A.n + 1, frozenset([m]), A.accepting, delta)


class Translator:
    def __init__(self, view, alphabet, strict=True,
                 max_states=DEFAULT_STATE_BUDGET, max_edges=DEFAULT_EDGE_BUDGET):
        self.view = view
        self.semiring = view.system.semiring
        self.alphabet = tuple(alphabet)
        self.strict = strict
        self.max_states = max_states
        self.max_edges = max_edges
        self.ctx = EvalContext(view, strict=strict, memo=False)
        self.memo_nfa = {}
        self.memo_wfa = {}

    # ---------------------------------------------------------------- misc

    def _key(self, node, sigma):
        fv = self.ctx.fv(node)
        return (id(node), tuple(sorted((v, sigma[v]) for v in fv if v in sigma)))

    def _guard_n(self, A, node):
        if A.n > self.max_states or _nfa_edge_count(A) > self.max_edges:
            raise ResourceError(
                "translation of %r exceeded the budget (%d states, %d transitions)"
                % (_describe(node), A.n, _nfa_edge_count(A)))
        return A

    def _guard_w(self, A, node):
        if A.n > self.max_states or _wfa_edge_count(A) > self.max_edges:
            raise ResourceError(
                "translation of %r exceeded the budget (%d states, %d transitions)"
                % (_describe(node), A.n, _wfa_edge_count(A)))
        return A

    def _det_cap(self):
        per_state = max(1, len(self.alphabet))
        return max(2, min(self.max_states, self.max_edges // per_state))

    def _pre_product(self, n1, n2, node):
        # product constructions materialize n1*n2 states before trimming
        if n1 * n2 > max(8 * self.max_states, 2000000):
            raise ResourceError(
                "translation of %r needs a %d-state product, over the budget"
                % (_describe(node), n1 * n2))

    def _indices(self, node):
        i = self.view.system.type_index(node.ctype)
        return self.view.r[i]

    # ----------------------------------------------------------- NFA layer

    def nfa_true(self):
        delta = {(0, a): frozenset([0]) for a in self.alphabet}
        return AU.Nfa(self.alphabet, 1, frozenset([0]), frozenset([0]), delta)

    def nfa_nothing(self):
        return AU.Nfa(self.alphabet, 1, frozenset([0]), frozenset(), {})

    def nfa_letter(self, pred):
        delta = {}
        for a in self.alphabet:
            if pred(a):
                delta[(0, a)] = frozenset([1])
        return AU.Nfa(self.alphabet, 2, frozenset([0]), frozenset([1]), delta)

    def nfa_of(self, f, sigma):
        key = self._key(f, sigma)
        hit = self.memo_nfa.get(key)
        if hit is not None:
            return hit
        A = self._nfa_of(f, sigma)
        self.memo_nfa[key] = A
        return A

    def _nfa_of(self, f, sigma):
        if isinstance(f, F.TrueF):
            return self.nfa_true()
        if self.ctx.pil(f):
            return self.nfa_letter(lambda a: _pil_letter(self.ctx, f, a, sigma))
        if isinstance(f, F.Eq) or isinstance(f, F.Neq):
            import operator
            from .semantics import _lookup
            op = operator.eq if isinstance(f, F.Eq) else operator.ne
            if op(_lookup(sigma, f.x), _lookup(sigma, f.y)):
                return self.nfa_true()
            return self.nfa_nothing()
        if isinstance(f, F.Not):
            A = AU.nfa_complement(self.nfa_of(f.sub, sigma), self._det_cap())
            return self._guard_n(strip_epsilon(A), f)
        if isinstance(f, (F.Or, F.And, F.Cat, F.Shuf)):
            ops = {F.Or: AU.nfa_union, F.And: AU.nfa_intersect,
                   F.Cat: AU.nfa_concat, F.Shuf: AU.nfa_shuffle}
            L, R = self.nfa_of(f.left, sigma), self.nfa_of(f.right, sigma)
            if isinstance(f, (F.And, F.Shuf)):
                self._pre_product(L.n, R.n, f)
            A = AU.nfa_trim(ops[type(f)](L, R))
            if self.strict and not self.ctx.fo(f):
                A = strip_epsilon(A)
            return self._guard_n(A, f)
        if isinstance(f, F.Quant):
            return self._nfa_quant(f, sigma)
        if F.is_weighted(f):
            raise ValidationError("weighted subformula %r where a boolean one "
                                  "is needed" % _describe(f))
        raise ValidationError("cannot translate %s" % type(f).__name__)

    def _nfa_quant(self, f, sigma):
        m = self._indices(f)
        body = lambda j: self.nfa_of(f.body, dict(sigma, **{f.var: j}))

        def fold(op, autos):
            acc = autos[0]
            for A in autos[1:]:
                if op in (AU.nfa_intersect, AU.nfa_shuffle):
                    self._pre_product(acc.n, A.n, f)
                acc = self._guard_n(AU.nfa_trim(op(acc, A)), f)
            return acc

        if f.kind == "E":
            return fold(AU.nfa_union, [body(j) for j in range(1, m + 1)])
        if f.kind == "A":
            return fold(AU.nfa_intersect, [body(j) for j in range(1, m + 1)])
        if f.kind == "Ac":
            return fold(AU.nfa_concat, [body(j) for j in range(1, m + 1)])
        if f.kind == "As":
            return fold(AU.nfa_shuffle, [body(j) for j in range(1, m + 1)])
        if f.kind in ("Ec", "Es"):
            op = AU.nfa_concat if f.kind == "Ec" else AU.nfa_shuffle
            parts = []
            for J in nonempty_subsets(m):
                parts.append(fold(op, [body(j) for j in J]))
            return fold(AU.nfa_union, parts)
        raise ValidationError("unknown quantifier %r" % f.kind)

    # ----------------------------------------------------------- WFA layer

    def wfa_const(self, k):
        sr = self.semiring
        edges = {a: [(0, 0, sr.one)] for a in self.alphabet}
        return AU.Wfa(sr, self.alphabet, 1, {0: k}, {0: sr.one}, edges)

    def _hadamard_operand(self, node, sigma, other):
        support = {a for a, es in other.edges.items() if es}
        if F.is_weighted(node) or len(support) >= len(self.alphabet):
            return self.wfa_of(node, sigma)
        sub = Translator(self.view, tuple(a for a in self.alphabet if a in support),
                         self.strict, self.max_states, self.max_edges)
        B = sub.wfa_of(node, sigma)
        return AU.Wfa(self.semiring, self.alphabet, B.n, B.init, B.ter, B.edges)

    def wfa_of(self, f, sigma):
        key = self._key(f, sigma)
        hit = self.memo_wfa.get(key)
        if hit is not None:
            return hit
        A = self._wfa_of(f, sigma)
        self.memo_wfa[key] = A
        return A

    def _wfa_of(self, f, sigma):
        sr = self.semiring
        if isinstance(f, F.Const):
            return self.wfa_const(f.value)
        if isinstance(f, F.HashW):
            letter = self.ctx.macro_letter(f, sigma)
            if letter is None or letter not in self.alphabet:
                return AU.Wfa(sr, self.alphabet, 1, {}, {}, {})
            kw = self.ctx.macro_weight(f, sigma)
            if kw == sr.zero:
                return AU.Wfa(sr, self.alphabet, 1, {}, {}, {})
            return AU.Wfa(sr, self.alphabet, 2, {0: sr.one}, {1: sr.one},
                          {letter: [(0, 1, kw)]})
        if not F.is_weighted(f):
            D = AU.nfa_determinize_complete(self.nfa_of(f, sigma), self._det_cap())
            return self._guard_w(AU.wfa_trim(AU.characteristic_wfa(D, sr)), f)
        if isinstance(f, F.WTimes):
            # pointwise product: an embedded boolean factor only needs
            # translating over the other factor's support letters, since the
            # product is zero wherever the other factor already is
            if not F.is_weighted(f.left) and F.is_weighted(f.right):
                right = self.wfa_of(f.right, sigma)
                left = self._hadamard_operand(f.left, sigma, right)
            else:
                left = self.wfa_of(f.left, sigma)
                right = self._hadamard_operand(f.right, sigma, left)
            self._pre_product(left.n, right.n, f)
            A = AU.wfa_hadamard(left, right)
            return self._guard_w(AU.wfa_trim(A), f)
        if isinstance(f, (F.WPlus, F.WCat, F.WShuf)):
            ops = {F.WPlus: AU.wfa_sum,
                   F.WCat: AU.wfa_cauchy, F.WShuf: AU.wfa_shuffle}
            A = ops[type(f)](self.wfa_of(f.left, sigma), self.wfa_of(f.right, sigma))
            return self._guard_w(AU.wfa_trim(A), f)
        if isinstance(f, F.WQuant):
            return self._wfa_quant(f, sigma)
        raise ValidationError("cannot translate %s" % type(f).__name__)

    def _wfa_quant(self, f, sigma):
        m = self._indices(f)
        body = lambda j: self.wfa_of(f.body, dict(sigma, **{f.var: j}))

        def fold(op, autos):
            acc = autos[0]
            for A in autos[1:]:
                if op in (AU.wfa_hadamard, AU.wfa_shuffle):
                    self._pre_product(acc.n, A.n, f)
                acc = self._guard_w(AU.wfa_trim(op(acc, A)), f)
            return acc

        if f.kind == "Sum":
            return fold(AU.wfa_sum, [body(j) for j in range(1, m + 1)])
        if f.kind == "Prod":
            return fold(AU.wfa_hadamard, [body(j) for j in range(1, m + 1)])
        if f.kind == "ProdC":
            return fold(AU.wfa_cauchy, [body(j) for j in range(1, m + 1)])
        if f.kind == "ProdS":
            return fold(AU.wfa_shuffle, [body(j) for j in range(1, m + 1)])
        if f.kind in ("SumC", "SumS"):
            op = AU.wfa_cauchy if f.kind == "SumC" else AU.wfa_shuffle
            parts = []
            for J in nonempty_subsets(m):
                parts.append(fold(op, [body(j) for j in J]))
            return fold(AU.wfa_sum, parts)
        raise ValidationError("unknown weighted quantifier %r" % f.kind)


def _describe(node):
    try:
        s = F.format_formula(node)
    except Exception:
        s = type(node).__name__
    if len(s) > 100:
        s = s[:97] + "..."
    return s


def _entry(view, formula, sigma, alphabet):
    sigma = dict(sigma or {})
    missing = F.free_variables(formula) - set(sigma)
    if missing:
        raise ValidationError("free variables need an assignment before "
                              "translation: %s" % ", ".join(sorted(missing)))
    if alphabet is None:
        alphabet = view.enumerate_interactions()
    return sigma, alphabet


def translate_foeil(view, formula, sigma=None, alphabet=None, strict=True,
                    max_states=DEFAULT_STATE_BUDGET, max_edges=DEFAULT_EDGE_BUDGET):
    sigma, alphabet = _entry(view, formula, sigma, alphabet)
    if F.is_weighted(formula):
        raise ValidationError("weighted formula: use translate_wfoeil")
    tr = Translator(view, alphabet, strict, max_states, max_edges)
    return tr.nfa_of(formula, sigma)


def translate_wfoeil(view, formula, sigma=None, alphabet=None, strict=True,
                     max_states=DEFAULT_STATE_BUDGET, max_edges=DEFAULT_EDGE_BUDGET):
    sigma, alphabet = _entry(view, formula, sigma, alphabet)
    tr = Translator(view, alphabet, strict, max_states, max_edges)
    return tr.wfa_of(formula, sigma)
