"""Formula ASTs for the interaction logics and their weighted extensions.

Layers, from small to large:
  PIL    - boolean formulas about a single interaction (true, atoms, !, &, |)
  EPIL   - adds word structure: concatenation * and shuffle ~
  FOEIL  - adds sorted first-order quantifiers and (in)equality of instances
  wFOEIL - weighted layer: constants, (+) (x) (.) (~) and weighted quantifiers

`hash(...)`/`hashw(...)` are exact-interaction macros: the letter consisting
of precisely the listed ports (hashw also multiplies in the port weights).
"""

from dataclasses import dataclass, field

from .errors import ValidationError

# ---------------------------------------------------------------- AST nodes


@dataclass
class TrueF:
    span: object = field(default=None, compare=False)


@dataclass
class Atom:
    ctype: str
    port: str
    arg: tuple  # ('var', name) or ('inst', j)
    span: object = field(default=None, compare=False)


@dataclass
class Not:
    sub: object
    span: object = field(default=None, compare=False)


@dataclass
class Or:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class And:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class Cat:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class Shuf:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class Eq:
    x: str
    y: str
    span: object = field(default=None, compare=False)


@dataclass
class Neq:
    x: str
    y: str
    span: object = field(default=None, compare=False)


QUANT_KINDS = ("E", "A", "Ec", "Ac", "Es", "As")
WQUANT_KINDS = ("Sum", "Prod", "SumC", "ProdC", "SumS", "ProdS")


@dataclass
class Quant:
    kind: str  # one of QUANT_KINDS
    var: str
    ctype: str
    body: object
    span: object = field(default=None, compare=False)


@dataclass
class Hash:
    atoms: list  # of Atom
    span: object = field(default=None, compare=False)


@dataclass
class Const:
    value: object
    span: object = field(default=None, compare=False)


@dataclass
class WPlus:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class WTimes:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class WCat:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class WShuf:
    left: object
    right: object
    span: object = field(default=None, compare=False)


@dataclass
class WQuant:
    kind: str  # one of WQUANT_KINDS
    var: str
    ctype: str
    body: object
    span: object = field(default=None, compare=False)


@dataclass
class HashW:
    atoms: list  # of Atom
    span: object = field(default=None, compare=False)


WEIGHTED = (Const, WPlus, WTimes, WCat, WShuf, WQuant, HashW)
BINARY = (Or, And, Cat, Shuf, WPlus, WTimes, WCat, WShuf)


def children(n):
    if isinstance(n, BINARY):
        return (n.left, n.right)
    if isinstance(n, Not):
        return (n.sub,)
    if isinstance(n, (Quant, WQuant)):
        return (n.body,)
    return ()


def walk(n):
    yield n
    for c in children(n):
        yield from walk(c)


def is_weighted(n):
    return isinstance(n, WEIGHTED)


def is_pil(n):
    """Single-interaction boolean layer (hash counts: it denotes one letter)."""
    if isinstance(n, (TrueF, Atom, Hash)):
        return True
    if isinstance(n, (Not, Or, And)):
        return all(is_pil(c) for c in children(n))
    return False


def is_epil(n):
    if isinstance(n, (TrueF, Atom, Hash)):
        return True
    if isinstance(n, (Not, Or, And, Cat, Shuf)):
        return all(is_epil(c) for c in children(n))
    return False


def contains_fo(n):
    """First-order features (=, !=, quantifiers) anywhere below an unweighted node."""
    if isinstance(n, (Eq, Neq, Quant)):
        return True
    return any(contains_fo(c) for c in children(n))


def free_variables(n, bound=None):
    bound = bound or frozenset()
    if isinstance(n, Atom):
        if n.arg[0] == "var" and n.arg[1] not in bound:
            return {n.arg[1]}
        return set()
    if isinstance(n, (Eq, Neq)):
        return {v for v in (n.x, n.y) if v not in bound}
    if isinstance(n, (Hash, HashW)):
        out = set()
        for a in n.atoms:
            out |= free_variables(a, bound)
        return out
    if isinstance(n, (Quant, WQuant)):
        return free_variables(n.body, bound | {n.var})
    out = set()
    for c in children(n):
        out |= free_variables(c, bound)
    return out


def _chain_parts(n):
    """Flattens a Cat chain into its elements."""
    if isinstance(n, Cat):
        return _chain_parts(n.left) + _chain_parts(n.right)
    return [n]


def _or_free(n):
    return not any(isinstance(m, Or) for m in walk(n))


def negation_operand_ok(n):
    """! applies to plain PIL, or to a * chain whose elements are |-free PIL."""
    if is_pil(n):
        return True
    if isinstance(n, Cat):
        return all(is_pil(p) and _or_free(p) for p in _chain_parts(n))
    return False


# ---------------------------------------------------------------- validation


def validate(formula, system, sentence=False, env=None):
    """Well-formedness: binding, sorts, layer rules, negation provisos.

    Open formulas need `env` mapping each free variable to its component
    type."""
    _check(formula, system, dict(env or {}), in_sum_chain=False)
    if sentence:
        fv = free_variables(formula)
        if fv:
            raise ValidationError("expected a sentence but found free variables: %s"
                                  % ", ".join(sorted(fv)))
    return formula


def _check_atom(n, system, env):
    idx = system.by_name.get(n.ctype)
    if idx is None:
        raise ValidationError("unknown component type %r" % n.ctype, n.span)
    t = system.types[idx]
    if n.port not in t.ports:
        raise ValidationError("type %r has no port %r" % (n.ctype, n.port), n.span)
    kind, v = n.arg
    if kind == "var":
        if v not in env:
            raise ValidationError("unbound variable %r" % v, n.span)
        if env[v] != n.ctype:
            raise ValidationError(
                "variable %r ranges over %r but is used at a %r port"
                % (v, env[v], n.ctype), n.span)
    else:
        if not (isinstance(v, int) and v >= 1):
            raise ValidationError("instance index must be >= 1, got %r" % (v,), n.span)


def _check(n, system, env, in_sum_chain):
    if isinstance(n, TrueF):
        return
    if isinstance(n, Atom):
        _check_atom(n, system, env)
        return
    if isinstance(n, (Hash, HashW)):
        if not n.atoms:
            raise ValidationError("empty interaction macro", n.span)
        for a in n.atoms:
            _check_atom(a, system, env)
        return
    if isinstance(n, Const):
        if not system.semiring.contains(n.value):
            raise ValidationError(
                "constant %r is outside the %s carrier"
                % (n.value, system.semiring.name), n.span)
        return
    if isinstance(n, (Eq, Neq)):
        for v in (n.x, n.y):
            if v not in env:
                raise ValidationError("unbound variable %r" % v, n.span)
        if env[n.x] != env[n.y]:
            raise ValidationError(
                "cannot compare %r (over %r) with %r (over %r)"
                % (n.x, env[n.x], n.y, env[n.y]), n.span)
        return
    if isinstance(n, Not):
        if is_weighted(n.sub):
            raise ValidationError("! takes an unweighted formula", n.span)
        if isinstance(n.sub, (Eq, Neq)):
            raise ValidationError("write x != y / x = y instead of negating", n.span)
        if in_sum_chain:
            if not is_pil(n.sub):
                raise ValidationError(
                    "under Ec/Es (or SumC/SumS) negation is limited to "
                    "single-interaction formulas and x != y", n.span)
        elif not negation_operand_ok(n.sub):
            raise ValidationError(
                "! applies to a single-interaction formula or a * chain of "
                "|-free ones", n.span)
        _check(n.sub, system, env, in_sum_chain)
        return
    if isinstance(n, (Or, And)):
        for c in children(n):
            if is_weighted(c):
                raise ValidationError(
                    "use (+) / (x) to combine weighted formulas", n.span)
            _check(c, system, env, in_sum_chain)
        return
    if isinstance(n, (Cat, Shuf)):
        for c in children(n):
            if not is_epil(c):
                raise ValidationError(
                    "* and ~ combine interaction-word formulas only; quantify "
                    "with Ec/Es/Ac/As for first-order concatenation", n.span)
            _check(c, system, env, in_sum_chain)
        return
    if isinstance(n, Quant):
        if n.kind not in QUANT_KINDS:
            raise ValidationError("unknown quantifier %r" % n.kind, n.span)
        _check_binder(n, system, env)
        if is_weighted(n.body):
            raise ValidationError("%s body must be unweighted (use %s)" %
                                  (n.kind, _weighted_twin(n.kind)), n.span)
        inner = in_sum_chain or n.kind in ("Ec", "Es")
        _check(n.body, system, dict(env, **{n.var: n.ctype}), inner)
        return
    if isinstance(n, (WPlus, WTimes, WCat, WShuf)):
        for c in children(n):
            _check(c, system, env, in_sum_chain)
        return
    if isinstance(n, WQuant):
        if n.kind not in WQUANT_KINDS:
            raise ValidationError("unknown weighted quantifier %r" % n.kind, n.span)
        _check_binder(n, system, env)
        inner = in_sum_chain or n.kind in ("SumC", "SumS")
        _check(n.body, system, dict(env, **{n.var: n.ctype}), inner)
        return
    raise ValidationError("unknown formula node %r" % type(n).__name__)


def _check_binder(n, system, env):
    if n.ctype not in system.by_name:
        raise ValidationError("unknown component type %r" % n.ctype, n.span)
    if n.var in env:
        raise ValidationError("variable %r is already bound" % n.var, n.span)


def _weighted_twin(kind):
    return {"E": "Sum", "A": "Prod", "Ec": "SumC", "Ac": "ProdC",
            "Es": "SumS", "As": "ProdS"}[kind]


_UNWEIGHTED_TWIN = {"Sum": "E", "Prod": "A", "SumC": "Ec", "ProdC": "Ac",
                    "SumS": "Es", "ProdS": "As"}


def reflect(n, one=True):
    """Boolean reflection: maps a weighted formula to the FOEIL formula whose
    satisfaction mirrors evaluation over the boolean semiring (with all
    weights equal to one).  Unweighted formulas come back unchanged."""
    if not is_weighted(n):
        if isinstance(n, BINARY):
            return type(n)(reflect(n.left, one), reflect(n.right, one), n.span)
        if isinstance(n, Not):
            return Not(reflect(n.sub, one), n.span)
        if isinstance(n, Quant):
            return Quant(n.kind, n.var, n.ctype, reflect(n.body, one), n.span)
        return n
    if isinstance(n, Const):
        return TrueF(n.span) if n.value == one else Not(TrueF(n.span), n.span)
    if isinstance(n, HashW):
        return Hash(n.atoms, n.span)
    if isinstance(n, WQuant):
        return Quant(_UNWEIGHTED_TWIN[n.kind], n.var, n.ctype,
                     reflect(n.body, one), n.span)
    pairs = {WPlus: Or, WTimes: And, WCat: Cat, WShuf: Shuf}
    return pairs[type(n)](reflect(n.left, one), reflect(n.right, one), n.span)


# ---------------------------------------------------------------- macros


def expand_hash_macro(node, view, sigma=None, weighted=None):
    """Grounds hash(...) to the exact-interaction PIL formula over a view.

    The macro holds of a one-letter word whose letter is precisely the listed
    port set; the expansion conjoins the listed atoms and negates every other
    port instance of the instantiation.  For hashw the result is paired with
    the product of the listed ports' weights (returned as (weight, formula)).
    """
    sigma = sigma or {}
    if weighted is None:
        weighted = isinstance(node, HashW)
    listed = []
    for a in node.atoms:
        kind, v = a.arg
        j = sigma.get(v) if kind == "var" else v
        if j is None:
            raise ValidationError("unresolved variable %r in macro" % v, a.span)
        listed.append((a.ctype, a.port, j))
    pos = [Atom(t, p, ("inst", j)) for t, p, j in listed]
    others = []
    for t, j in view.instances():
        for p in t.port_order:
            if (t.name, p, j) not in listed:
                others.append(Atom(t.name, p, ("inst", j)))
    f = pos[0]
    for a in pos[1:]:
        f = And(f, a)
    if others:
        neg = others[0]
        for a in others[1:]:
            neg = Or(neg, a)
        f = And(f, Not(neg))
    if not weighted:
        return f
    sr = view.system.semiring
    w = sr.one
    for t, p, j in listed:
        ct = view.system.types[view.system.type_index(t)]
        w = sr.mul(w, ct.effective_weight(p, sr.zero))
    return w, f


# ---------------------------------------------------------------- formatting

_PREC = {Or: 1, WPlus: 1, And: 2, WTimes: 2, Cat: 3, WCat: 3,
         Shuf: 4, WShuf: 4, Not: 5}

_OPS = {Or: "|", And: "&", Cat: "*", Shuf: "~",
        WPlus: "(+)", WTimes: "(x)", WCat: "(.)", WShuf: "(~)"}


def _prec(n):
    if isinstance(n, (Quant, WQuant)):
        return 0
    return _PREC.get(type(n), 6)


def _fmt_const(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if v == float("inf"):
            return "inf"
        if v == float("-inf"):
            return "-inf"
        if v == int(v):
            return str(int(v))
        return repr(v)
    return str(v)


def _atom_src(a):
    kind, v = a.arg
    return "%s.%s(%s)" % (a.ctype, a.port, v)


def format_formula(n, semiring=None):
    """Source text that re-parses to an equal AST."""

    def wrap(child, minimum):
        s = go(child)
        if _prec(child) < minimum:
            return "(" + s + ")"
        return s

    def go(n):
        if isinstance(n, TrueF):
            return "true"
        if isinstance(n, Atom):
            return _atom_src(n)
        if isinstance(n, Const):
            if semiring is not None:
                return semiring.format_value(n.value)
            return _fmt_const(n.value)
        if isinstance(n, Not):
            return "!" + wrap(n.sub, 6)
        if isinstance(n, BINARY):
            p = _prec(n)
            return "%s %s %s" % (wrap(n.left, p), _OPS[type(n)], wrap(n.right, p + 1))
        if isinstance(n, Eq):
            return "%s = %s" % (n.x, n.y)
        if isinstance(n, Neq):
            return "%s != %s" % (n.x, n.y)
        if isinstance(n, (Quant, WQuant)):
            return "%s %s:%s . %s" % (n.kind, n.var, n.ctype, go(n.body))
        if isinstance(n, Hash):
            return "hash(%s)" % ", ".join(_atom_src(a) for a in n.atoms)
        if isinstance(n, HashW):
            return "hashw(%s)" % ", ".join(_atom_src(a) for a in n.atoms)
        raise ValidationError("cannot format %r" % type(n).__name__)

    return go(n)
