"""Concrete syntax.

.wfl formulas (header line `wfl 1`): `& | ! * ~` on the unweighted side,
`(+) (x) (.) (~)` on the weighted side (lexed as exact three-character
operators), quantifiers `Sum x:type . body` with an optional constraint
`Sum x:type (x != y) . body` that is desugared at parse time, atoms
`type.port(var)` / `type.port(3)` / bare `port`, macros hash(...)/hashw(...),
weights as integers, decimals, a/b fractions, inf/-inf.  `->` and `false`
are sugar that normalizes away.  `#` starts a comment.

.wcb systems (header `wcb 1`) are line-oriented: a `semiring` line, `type`
blocks with `port NAME [weight V]` lines and an optional `lts` .. `end`
block (`initial STATE`, then `FROM PORT TO` transitions), and an optional
`instances name=N ...` line.
"""

from dataclasses import dataclass

from .errors import ParseError, ValidationError
from . import formulas as F
from .semiring import builtin
from .system import ComponentType, Lts, ParametricSystem, validate as validate_system

QUANTS = set(F.QUANT_KINDS) | set(F.WQUANT_KINDS)
KEYWORDS = QUANTS | {"true", "false", "hash", "hashw", "inf"}

FORALL_KINDS = {"A", "Ac", "As", "Prod", "ProdC", "ProdS"}

WOPS = {"(+)": "WPLUS", "(x)": "WTIMES", "(.)": "WCAT", "(~)": "WSHUF"}


@dataclass(frozen=True)
class SourceSpan:
    line: int
    col: int
    filename: str = None

    def __str__(self):
        where = "line %d col %d" % (self.line, self.col)
        if self.filename:
            where = "%s: %s" % (self.filename, where)
        return where


@dataclass
class Token:
    kind: str
    text: str
    span: SourceSpan


def _lex(text, filename=None):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)

    def span():
        return SourceSpan(line, col, filename)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text[i:i + 3] in WOPS:
            toks.append(Token(WOPS[text[i:i + 3]], text[i:i + 3], span()))
            i += 3
            col += 3
            continue
        if text[i:i + 2] == "!=":
            toks.append(Token("NEQ", "!=", span()))
            i += 2
            col += 2
            continue
        if text[i:i + 2] == "->":
            toks.append(Token("ARROW", "->", span()))
            i += 2
            col += 2
            continue
        if c in "()!&|*~=.,:":
            kind = {"(": "LP", ")": "RP", "!": "NOT", "&": "AND", "|": "OR",
                    "*": "CAT", "~": "SHUF", "=": "EQ", ".": "DOT",
                    ",": "COMMA", ":": "COLON"}[c]
            toks.append(Token(kind, c, span()))
            i += 1
            col += 1
            continue
        if c == "-" or c.isdigit():
            s = span()
            j = i
            if c == "-":
                j += 1
                if text[j:j + 3] == "inf":
                    toks.append(Token("NUMBER", "-inf", s))
                    i, col = j + 3, col + 4
                    continue
                if j >= n or not text[j].isdigit():
                    raise ParseError("stray '-'", s)
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            elif j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            toks.append(Token("NUMBER", text[i:j], s))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            toks.append(Token("IDENT", word, span()))
            col += j - i
            i = j
            continue
        raise ParseError("unexpected character %r" % c, span())
    toks.append(Token("EOF", "", span()))
    return toks


class _FormulaParser:
    def __init__(self, tokens, system):
        self.toks = tokens
        self.pos = 0
        self.system = system

    def peek(self, k=0):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, what=None):
        t = self.next()
        if t.kind != kind:
            raise ParseError("expected %s but found %r" % (what or kind, t.text or "end of input"),
                             t.span)
        return t

    def at_quant(self):
        t = self.peek()
        return t.kind == "IDENT" and t.text in QUANTS

    # precedence ladder: -> | (+) & (x) * (.) ~ (~) ! primary
    def parse(self):
        f = self.impl()
        t = self.peek()
        if t.kind != "EOF":
            raise ParseError("unexpected %r after formula" % t.text, t.span)
        return f

    def impl(self):
        left = self.level(1)
        if self.peek().kind == "ARROW":
            t = self.next()
            right = self.impl()
            return F.Or(F.Not(left, span=t.span), right, span=t.span)
        return left

    LEVELS = {1: (("OR", F.Or), ("WPLUS", F.WPlus)),
              2: (("AND", F.And), ("WTIMES", F.WTimes)),
              3: (("CAT", F.Cat), ("WCAT", F.WCat)),
              4: (("SHUF", F.Shuf), ("WSHUF", F.WShuf))}

    def level(self, lv):
        if lv > 4:
            return self.unary()
        left = self.level(lv + 1)
        while True:
            t = self.peek()
            hit = None
            for kind, cls in self.LEVELS[lv]:
                if t.kind == kind:
                    hit = cls
                    break
            if hit is None:
                return left
            self.next()
            right = self.level(lv + 1)
            left = hit(left, right, span=t.span)

    def unary(self):
        t = self.peek()
        if t.kind == "NOT":
            self.next()
            return F.Not(self.unary(), span=t.span)
        return self.primary()

    def primary(self):
        t = self.peek()
        if t.kind == "LP":
            self.next()
            f = self.impl()
            self.expect("RP", "')'")
            return f
        if t.kind == "WTIMES":
            # "(x)" in operand position is a parenthesized bare atom x
            self.next()
            return self.bare_atom(Token("IDENT", "x", t.span))
        if t.kind == "NUMBER":
            self.next()
            return F.Const(self.parse_const(t), span=t.span)
        if t.kind == "IDENT":
            if t.text in QUANTS:
                return self.quantifier()
            if t.text == "true":
                self.next()
                return F.TrueF(span=t.span)
            if t.text == "false":
                self.next()
                return F.Not(F.TrueF(span=t.span), span=t.span)
            if t.text == "inf":
                self.next()
                return F.Const(self.parse_const(t), span=t.span)
            if t.text in ("hash", "hashw"):
                return self.macro()
            return self.atom_or_compare()
        raise ParseError("expected a formula, found %r" % (t.text or "end of input"), t.span)

    def parse_const(self, tok):
        if self.system is not None:
            return self.system.semiring.parse_value(tok.text)
        s = tok.text
        if s in ("inf", "-inf"):
            return float(s)
        if "/" in s or "." in s:
            from fractions import Fraction
            return Fraction(s)
        return int(s)

    def quantifier(self):
        t = self.next()
        kind = t.text
        var = self.expect("IDENT", "a variable name")
        if var.text in KEYWORDS:
            raise ParseError("%r is reserved" % var.text, var.span)
        self.expect("COLON", "':' after the variable")
        ctype = self.expect("IDENT", "a component type")
        if self.system is not None and ctype.text not in self.system.by_name:
            raise ValidationError("unknown component type %r" % ctype.text,
                                  ctype.span)
        constraint = None
        if self.peek().kind == "LP":
            self.next()
            constraint = self.impl()
            self.expect("RP", "')'")
            _check_constraint(constraint)
        self.expect("DOT", "'.' before the quantifier body")
        body = self.impl()
        body = _apply_constraint(kind, constraint, body)
        cls = F.Quant if kind in F.QUANT_KINDS else F.WQuant
        return cls(kind, var.text, ctype.text, body, span=t.span)

    def macro(self):
        t = self.next()
        self.expect("LP", "'('")
        atoms = [self.macro_atom()]
        while self.peek().kind == "COMMA":
            self.next()
            atoms.append(self.macro_atom())
        self.expect("RP", "')'")
        cls = F.Hash if t.text == "hash" else F.HashW
        return cls(atoms, span=t.span)

    def macro_atom(self):
        f = self.atom_or_compare()
        if not isinstance(f, F.Atom) or f.arg[0] == "any":
            raise ParseError("hash/hashw arguments must be port atoms "
                             "with an instance or variable", self.peek().span)
        return f

    def atom_or_compare(self):
        name = self.expect("IDENT", "a name")
        if name.text in KEYWORDS:
            raise ParseError("%r is reserved" % name.text, name.span)
        nxt = self.peek()
        if nxt.kind == "DOT":
            self.next()
            port = self.expect("IDENT", "a port name")
            arg = ("any",)
            if self.peek().kind == "WTIMES":
                # "p(x)" lexed as the (x) operator token: it is the variable x
                self.next()
                arg = ("var", "x")
            elif self.peek().kind == "LP":
                self.next()
                a = self.next()
                if a.kind == "IDENT" and a.text not in KEYWORDS:
                    arg = ("var", a.text)
                elif a.kind == "NUMBER" and a.text.isdigit() and int(a.text) >= 1:
                    arg = ("inst", int(a.text))
                else:
                    raise ParseError("expected a variable or instance index", a.span)
                self.expect("RP", "')'")
            return F.Atom(name.text, port.text, arg, span=name.span)
        if nxt.kind in ("EQ", "NEQ"):
            self.next()
            other = self.expect("IDENT", "a variable name")
            cls = F.Eq if nxt.kind == "EQ" else F.Neq
            return cls(name.text, other.text, span=nxt.span)
        return self.bare_atom(name)

    def bare_atom(self, tok):
        if self.system is None:
            raise ParseError(
                "bare port %r needs a system to resolve against; write type.port"
                % tok.text, tok.span)
        owners = [t.name for t in self.system.types if tok.text in t.ports]
        if not owners:
            raise ParseError("no component type declares a port %r" % tok.text, tok.span)
        if len(owners) > 1:
            raise ParseError("port %r is declared by %s; qualify it"
                             % (tok.text, " and ".join(owners)), tok.span)
        return F.Atom(owners[0], tok.text, ("any",), span=tok.span)


def _check_constraint(c):
    if isinstance(c, (F.Eq, F.Neq, F.TrueF)):
        return
    if isinstance(c, (F.And, F.Or)):
        _check_constraint(c.left)
        _check_constraint(c.right)
        return
    if isinstance(c, F.Not):
        _check_constraint(c.sub)
        return
    raise ParseError("quantifier constraints are built from =, != with &, |, !",
                     getattr(c, "span", None))


def _negate_constraint(c):
    if isinstance(c, F.Eq):
        return F.Neq(c.x, c.y, span=c.span)
    if isinstance(c, F.Neq):
        return F.Eq(c.x, c.y, span=c.span)
    if isinstance(c, F.And):
        return F.Or(_negate_constraint(c.left), _negate_constraint(c.right), span=c.span)
    if isinstance(c, F.Or):
        return F.And(_negate_constraint(c.left), _negate_constraint(c.right), span=c.span)
    if isinstance(c, F.Not):
        return _normalize_constraint(c.sub)
    if isinstance(c, F.TrueF):
        return F.Not(F.TrueF(), span=c.span)
    raise ParseError("cannot negate constraint", getattr(c, "span", None))


def _normalize_constraint(c):
    """Pushes constraint negation down to =/!= literals so the desugared
    formula stays inside the legal negation fragment."""
    if isinstance(c, (F.Eq, F.Neq, F.TrueF)):
        return c
    if isinstance(c, F.And):
        return F.And(_normalize_constraint(c.left), _normalize_constraint(c.right),
                     span=c.span)
    if isinstance(c, F.Or):
        return F.Or(_normalize_constraint(c.left), _normalize_constraint(c.right),
                    span=c.span)
    if isinstance(c, F.Not):
        return _negate_constraint(_normalize_constraint(c.sub))
    raise ParseError("cannot normalize constraint", getattr(c, "span", None))


def _apply_constraint(kind, constraint, body):
    """Constrained quantifiers desugar by polarity: universal kinds guard with
    an implication, existential kinds with a conjunction (product on the
    weighted side)."""
    if constraint is None:
        return body
    beta = _normalize_constraint(constraint)
    if kind in FORALL_KINDS:
        if kind in F.QUANT_KINDS:
            return F.Or(_negate_constraint(beta), body, span=constraint.span)
        return F.WPlus(_negate_constraint(beta),
                       F.WTimes(beta, body, span=constraint.span),
                       span=constraint.span)
    if kind in F.QUANT_KINDS:
        return F.And(beta, body, span=constraint.span)
    return F.WTimes(beta, body, span=constraint.span)


def parse_formula(text, system=None, filename=None):
    toks = _lex(text, filename)
    return _FormulaParser(toks, system).parse()


# ---------------------------------------------------------------- .wcb files


def _strip_comment(line):
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


def parse_system(text, filename=None, semiring_override=None):
    lines = text.split("\n")
    sem = None
    types = []
    cur = None  # ComponentType being filled
    default_r = None
    counts = None
    i = 0
    total = len(lines)

    def err(msg, lineno):
        raise ParseError(msg, SourceSpan(lineno + 1, 1, filename))

    # header
    while i < total and not _strip_comment(lines[i]):
        i += 1
    if i >= total or _strip_comment(lines[i]).split() != ["wcb", "1"]:
        err("expected header line 'wcb 1'", min(i, total - 1))
    i += 1

    while i < total:
        raw = _strip_comment(lines[i])
        lineno = i
        i += 1
        if not raw:
            continue
        parts = raw.split()
        head = parts[0]
        if head == "semiring":
            if len(parts) != 2:
                err("usage: semiring NAME", lineno)
            sem = builtin(semiring_override or parts[1])
        elif head == "type":
            if len(parts) != 2:
                err("usage: type NAME", lineno)
            cur = ComponentType(parts[1], {}, [])
            types.append(cur)
        elif head == "port":
            if cur is None:
                err("'port' outside a type block", lineno)
            if sem is None:
                err("declare the semiring before ports", lineno)
            if len(parts) == 2:
                name, w = parts[1], sem.one
            elif len(parts) == 4 and parts[2] == "weight":
                name = parts[1]
                try:
                    w = sem.parse_value(parts[3])
                except ValidationError as e:
                    err(str(e), lineno)
            else:
                err("usage: port NAME [weight VALUE]", lineno)
            if name in cur.ports:
                err("duplicate port %r in type %r" % (name, cur.name), lineno)
            cur.ports[name] = w
            cur.port_order.append(name)
        elif head == "lts":
            if cur is None:
                err("'lts' outside a type block", lineno)
            initial = None
            transitions = []
            states = []
            while i < total:
                body = _strip_comment(lines[i])
                bodyno = i
                i += 1
                if not body:
                    continue
                bp = body.split()
                if bp == ["end"]:
                    break
                if bp[0] == "initial":
                    if len(bp) != 2:
                        err("usage: initial STATE", bodyno)
                    initial = bp[1]
                    if initial not in states:
                        states.append(initial)
                elif len(bp) == 3:
                    frm, port, to = bp
                    for s in (frm, to):
                        if s not in states:
                            states.append(s)
                    transitions.append((frm, port, to))
                else:
                    err("lts lines are 'initial STATE' or 'FROM PORT TO'", bodyno)
            else:
                err("lts block never closed with 'end'", lineno)
            if initial is None:
                err("lts block lacks an 'initial' line", lineno)
            cur.lts = Lts(initial, states, transitions)
        elif head == "instances":
            counts = {}
            for item in parts[1:]:
                if "=" not in item:
                    err("usage: instances name=N ...", lineno)
                name, _, num = item.partition("=")
                if not num.isdigit():
                    err("instance count for %r must be a positive integer" % name, lineno)
                if name in counts:
                    err("instance count for %r given twice" % name, lineno)
                counts[name] = int(num)
        else:
            err("unknown directive %r" % head, lineno)

    if sem is None:
        raise ParseError("missing 'semiring' line", SourceSpan(1, 1, filename))
    if not types:
        raise ParseError("no component types declared", SourceSpan(1, 1, filename))
    if counts is not None:
        names = {t.name for t in types}
        for name in counts:
            if name not in names:
                raise ParseError("instances block names unknown type %r" % name,
                                 SourceSpan(1, 1, filename))
        missing = [t.name for t in types if t.name not in counts]
        if missing:
            raise ParseError("instances block misses %s" % ", ".join(missing),
                             SourceSpan(1, 1, filename))
        default_r = tuple(counts[t.name] for t in types)
    sysm = ParametricSystem(sem, types, default_r)
    return validate_system(sysm)


# ---------------------------------------------------------------- file loaders


def load_system(path, semiring_override=None):
    with open(path) as fh:
        return parse_system(fh.read(), filename=str(path),
                            semiring_override=semiring_override)


def load_formula(path, system=None):
    with open(path) as fh:
        text = fh.read()
    lines = text.split("\n")
    i = 0
    while i < len(lines) and not _strip_comment(lines[i]):
        i += 1
    if i >= len(lines) or _strip_comment(lines[i]).split() != ["wfl", "1"]:
        raise ParseError("expected header line 'wfl 1'", SourceSpan(1, 1, str(path)))
    rest = "\n".join(lines[:i] + [""] + lines[i + 1:])  # keep line numbers aligned
    return parse_formula(rest, system, filename=str(path))
