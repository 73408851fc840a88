"""Shared test plumbing: the bridge from package ASTs to the brute-force
oracle encoding, oracle environments for a system, and random generators
for formulas, words and automata used by the differential tests.
"""

import random
from fractions import Fraction

import oracles
from wfoeil import formulas as F
from wfoeil.system import PortInstance


def _arg(a):
    if a[0] == "var":
        return ("v", a[1])
    if a[0] == "inst":
        return ("i", a[1])
    raise ValueError("oracle encoding has no %r atoms" % (a,))


def to_oracle(n):
    """Package AST -> oracle tuple encoding (common fragment only)."""
    if isinstance(n, F.TrueF):
        return ("true",)
    if isinstance(n, F.Atom):
        return ("port", n.ctype, n.port, _arg(n.arg))
    if isinstance(n, F.Not):
        return ("not", to_oracle(n.sub))
    if isinstance(n, F.Or):
        return ("or", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.And):
        return ("and", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.Cat):
        return ("cat", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.Shuf):
        return ("shuf", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.Eq):
        return ("eq", n.x, n.y)
    if isinstance(n, F.Neq):
        return ("neq", n.x, n.y)
    if isinstance(n, F.Quant):
        return ("q", n.kind, n.var, n.ctype, to_oracle(n.body))
    if isinstance(n, F.Hash):
        return ("hash", tuple((a.ctype, a.port, _arg(a.arg)) for a in n.atoms))
    if isinstance(n, F.Const):
        return ("const", n.value)
    if isinstance(n, F.HashW):
        return ("hashw", tuple((a.ctype, a.port, _arg(a.arg)) for a in n.atoms))
    if isinstance(n, F.WPlus):
        return ("wplus", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.WTimes):
        return ("wtimes", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.WCat):
        return ("wcat", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.WShuf):
        return ("wshuf", to_oracle(n.left), to_oracle(n.right))
    if isinstance(n, F.WQuant):
        kind = {"Sum": "S", "Prod": "P", "SumC": "Sc", "ProdC": "Pc",
                "SumS": "Ss", "ProdS": "Ps"}[n.kind]
        return ("wq", kind, n.var, n.ctype, to_oracle(n.body))
    raise ValueError(type(n).__name__)


def oracle_env(view, strict=True, memo=True):
    system = view.system
    sr = system.semiring
    r = {t.name: view.r[i] for i, t in enumerate(system.types)}
    weights = {}
    for t in system.types:
        for p in t.port_order:
            weights[(t.name, p)] = t.effective_weight(p, sr.zero)
    return oracles.OracleEnv(r=r, weights=weights, strict=strict,
                             zero=sr.zero, one=sr.one,
                             add=sr.add, mul=sr.mul, memo=memo)


# ------------------------------------------------------------- tiny system

TINY_WCB = """wcb 1
semiring natural

type sensor
  port p weight 2
  port q weight 3

type relay
  port s weight 5

instances sensor=2 relay=2
"""


def tiny_view(semiring=None):
    from wfoeil.parser import parse_system
    from wfoeil.system import instantiate
    system = parse_system(TINY_WCB, semiring_override=semiring)
    return instantiate(system, (2, 2))


# ------------------------------------------------------- random generators


class FormulaGen:
    """Builds a package AST and its oracle twin with the same choices.

    The generated trees stay inside the validated grammar: negation only
    over single PIL letters, concatenation/shuffle only over the EPIL
    layer, quantifier bodies unweighted where required.
    """

    def __init__(self, rng, view):
        self.rng = rng
        self.view = view
        self.types = view.system.types
        self.fresh = 0

    def _type_port(self):
        t = self.rng.choice(self.types)
        return t.name, self.rng.choice(t.port_order)

    def _inst(self, tname):
        i = self.view.system.type_index(tname)
        return self.rng.randint(1, self.view.r[i])

    def atom(self, env):
        tname, port = self._type_port()
        usable = [v for v, vt in env.items() if vt == tname]
        if usable and self.rng.random() < 0.7:
            arg = ("var", self.rng.choice(usable))
        else:
            arg = ("inst", self._inst(tname))
        return F.Atom(tname, port, arg), ("port", tname, port, _arg(arg))

    def pil(self, env, depth):
        r = self.rng.random()
        if depth <= 0 or r < 0.30:
            if r < 0.06:
                return F.TrueF(), ("true",)
            return self.atom(env)
        if r < 0.45:
            sub, osub = self.pil(env, 0)
            return F.Not(sub), ("not", osub)
        ctor, tag = (F.Or, "or") if r < 0.75 else (F.And, "and")
        l, ol = self.pil(env, depth - 1)
        rr, orr = self.pil(env, depth - 1)
        return ctor(l, rr), (tag, ol, orr)

    def epil(self, env, depth):
        r = self.rng.random()
        if depth <= 0 or r < 0.35:
            return self.pil(env, depth)
        l, ol = self.epil(env, depth - 1)
        rr, orr = self.epil(env, depth - 1)
        ctor, tag = self.rng.choice(
            [(F.Or, "or"), (F.And, "and"), (F.Cat, "cat"), (F.Shuf, "shuf")])
        return ctor(l, rr), (tag, ol, orr)

    def _binder(self, env):
        t = self.rng.choice(self.types)
        var = "v%d" % self.fresh
        self.fresh += 1
        return var, t.name, dict(env, **{var: t.name})

    def foeil(self, env, depth, in_chain=False):
        r = self.rng.random()
        if depth <= 0:
            return self.epil(env, 1)
        if r < 0.25:
            return self.epil(env, depth)
        if r < 0.40 and len(env) >= 2:
            x, y = self.rng.sample(sorted(env), 2)
            if env[x] == env[y]:
                if self.rng.random() < 0.5:
                    return F.Eq(x, y), ("eq", x, y)
                return F.Neq(x, y), ("neq", x, y)
        if r < 0.60:
            kind = self.rng.choice(F.QUANT_KINDS)
            var, tname, env2 = self._binder(env)
            body, obody = self.foeil(env2, depth - 1,
                                     in_chain or kind in ("Ec", "Es"))
            return (F.Quant(kind, var, tname, body),
                    ("q", kind, var, tname, obody))
        ctor, tag = self.rng.choice([(F.Or, "or"), (F.And, "and")])
        l, ol = self.foeil(env, depth - 1, in_chain)
        rr, orr = self.foeil(env, depth - 1, in_chain)
        return ctor(l, rr), (tag, ol, orr)

    def hashw(self, env):
        used = set()
        atoms = []
        oatoms = []
        for _ in range(self.rng.randint(1, 2)):
            tname, port = self._type_port()
            usable = [v for v, vt in env.items() if vt == tname]
            if usable and self.rng.random() < 0.7:
                arg = ("var", self.rng.choice(usable))
            else:
                arg = ("inst", self._inst(tname))
            if (tname, arg) in used:
                continue
            used.add((tname, arg))
            atoms.append(F.Atom(tname, port, arg))
            oatoms.append((tname, port, _arg(arg)))
        return F.HashW(atoms), ("hashw", tuple(oatoms))

    def weighted(self, env, depth, in_chain=False):
        r = self.rng.random()
        if depth <= 0 or r < 0.20:
            if r < 0.05:
                k = self.view.system.semiring.sample(self.rng)
                return F.Const(k), ("const", k)
            return self.hashw(env)
        if r < 0.35:
            return self.foeil(env, depth - 1, in_chain)
        if r < 0.55:
            kind = self.rng.choice(F.WQUANT_KINDS)
            var, tname, env2 = self._binder(env)
            body, obody = self.weighted(env2, depth - 1,
                                        in_chain or kind in ("SumC", "SumS"))
            okind = {"Sum": "S", "Prod": "P", "SumC": "Sc", "ProdC": "Pc",
                     "SumS": "Ss", "ProdS": "Ps"}[kind]
            return (F.WQuant(kind, var, tname, body),
                    ("wq", okind, var, tname, obody))
        ctor, tag = self.rng.choice(
            [(F.WPlus, "wplus"), (F.WTimes, "wtimes"),
             (F.WCat, "wcat"), (F.WShuf, "wshuf")])
        l, ol = self.weighted(env, depth - 1, in_chain)
        rr, orr = self.weighted(env, depth - 1, in_chain)
        return ctor(l, rr), (tag, ol, orr)


def random_word(rng, alphabet, max_len):
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_wfa(rng, semiring, alphabet, n=3, density=0.5, values=None):
    """Random WFA with dense-ish structure; values drawn from `values` or
    small exact fractions."""
    from wfoeil.automata import Wfa
    if values is None:
        values = [Fraction(k) for k in (-2, -1, 1, 2, 3)] + [Fraction(1, 2)]
    edges = {}
    for a in alphabet:
        es = []
        for p in range(n):
            for q in range(n):
                if rng.random() < density:
                    es.append((p, q, rng.choice(values)))
        if es:
            edges[a] = es
    init = {q: rng.choice(values) for q in range(n) if rng.random() < 0.7}
    ter = {q: rng.choice(values) for q in range(n) if rng.random() < 0.7}
    if not init:
        init = {0: rng.choice(values)}
    if not ter:
        ter = {n - 1: rng.choice(values)}
    return Wfa(semiring, tuple(alphabet), n, init, ter, edges)


def random_nfa(rng, alphabet, n=4):
    from wfoeil.automata import Nfa
    delta = {}
    for q in range(n):
        for a in alphabet:
            ts = frozenset(t for t in range(n) if rng.random() < 0.35)
            if ts:
                delta[(q, a)] = ts
    initial = frozenset(q for q in range(n) if rng.random() < 0.5) or frozenset([0])
    accepting = frozenset(q for q in range(n) if rng.random() < 0.4)
    return Nfa(tuple(alphabet), n, initial, accepting, delta)
