"""Parametric weighted component-based systems.

A system is a list of component types, each with weighted ports and an
optional port-labeled transition system.  Instantiating with a mapping r
(instances per type) yields a view that can enumerate the interaction
alphabet and weigh letters.  A letter (interaction) is a nonempty frozenset
of PortInstance triples with at most one port per component instance; a
word is a tuple of letters.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from .errors import ValidationError, ResourceError

INTERACTION_LIMIT = 2 ** 20


class PortInstance(NamedTuple):
    ctype: str
    port: str
    inst: int

    def __str__(self):
        return "%s.%s(%d)" % (self.ctype, self.port, self.inst)


@dataclass
class Lts:
    initial: str
    states: list
    transitions: list  # (from_state, port, to_state)

    def used_ports(self):
        return {p for _, p, _ in self.transitions}


@dataclass
class ComponentType:
    name: str
    ports: dict  # port name -> weight (value in the system's semiring)
    port_order: list = None
    lts: Lts = None

    def __post_init__(self):
        if self.port_order is None:
            self.port_order = list(self.ports)

    def effective_weight(self, port, zero):
        """Declared weight, or semiring zero if an LTS exists but never fires the port."""
        w = self.ports[port]
        if self.lts is not None and port not in self.lts.used_ports():
            return zero
        return w


@dataclass
class ParametricSystem:
    semiring: object  # SemiringSpec
    types: list  # ComponentType, order fixes the type index i
    default_r: tuple = None
    by_name: dict = field(default_factory=dict)

    def __post_init__(self):
        self.by_name = {t.name: i for i, t in enumerate(self.types)}

    def type_index(self, name):
        if name not in self.by_name:
            raise ValidationError("unknown component type %r" % name)
        return self.by_name[name]


def validate(system):
    """Checks the pieces of a ParametricSystem fit together."""
    seen = set()
    for t in system.types:
        if t.name in seen:
            raise ValidationError("duplicate component type %r" % t.name)
        seen.add(t.name)
        if not t.ports:
            raise ValidationError("component type %r declares no ports" % t.name)
        for p, w in t.ports.items():
            if not system.semiring.contains(w):
                raise ValidationError(
                    "weight %r of %s.%s is outside the %s carrier"
                    % (w, t.name, p, system.semiring.name))
        if t.lts is not None:
            states = set(t.lts.states)
            if t.lts.initial not in states:
                raise ValidationError(
                    "lts of %r: initial state %r not declared" % (t.name, t.lts.initial))
            for a, p, b in t.lts.transitions:
                if a not in states or b not in states:
                    raise ValidationError(
                        "lts of %r: transition %r -%s-> %r uses an undeclared state"
                        % (t.name, a, p, b))
                if p not in t.ports:
                    raise ValidationError(
                        "lts of %r: transition fires undeclared port %r" % (t.name, p))
    if system.default_r is not None:
        check_r(system, system.default_r)
    return system


def check_r(system, r):
    if len(r) != len(system.types):
        raise ValidationError(
            "instances block names %d counts but the system has %d component types"
            % (len(r), len(system.types)))
    for t, n in zip(system.types, r):
        if not isinstance(n, int) or n < 1:
            raise ValidationError(
                "instance count for %r must be a positive integer, got %r" % (t.name, n))


@dataclass
class SystemView:
    """A system together with a concrete instantiation r."""
    system: ParametricSystem
    r: tuple

    def instances(self):
        for i, t in enumerate(self.system.types):
            for j in range(1, self.r[i] + 1):
                yield t, j

    def interaction_count(self):
        total = 1
        for t, _ in self.instances():
            total *= 1 + len(t.ports)
        return total - 1

    def enumerate_interactions(self, limit=INTERACTION_LIMIT):
        n = self.interaction_count()
        if n > limit:
            raise ResourceError(
                "this instantiation has %d interactions (> limit %d); "
                "supply an explicit alphabet instead of enumerating" % (n, limit))
        per_instance = []
        for t, j in self.instances():
            opts = [None] + [PortInstance(t.name, p, j) for p in t.port_order]
            per_instance.append(opts)
        letters = []
        for combo in product(*per_instance):
            chosen = [pi for pi in combo if pi is not None]
            if chosen:
                letters.append(frozenset(chosen))
        letters.sort(key=lambda a: (len(a), sorted(a)))
        return letters

    def weight_of(self, letter):
        sr = self.system.semiring
        w = sr.one
        for pi in letter:
            t = self.system.types[self.system.type_index(pi.ctype)]
            w = sr.mul(w, t.effective_weight(pi.port, sr.zero))
        return w

    def check_letter(self, letter):
        used = set()
        for pi in letter:
            i = self.system.type_index(pi.ctype)
            t = self.system.types[i]
            if pi.port not in t.ports:
                raise ValidationError("type %r has no port %r" % (pi.ctype, pi.port))
            if not 1 <= pi.inst <= self.r[i]:
                raise ValidationError(
                    "instance %s out of range (r(%s)=%d)" % (pi, pi.ctype, self.r[i]))
            key = (pi.ctype, pi.inst)
            if key in used:
                raise ValidationError(
                    "interaction uses two ports of the same component instance %s(%d)"
                    % (pi.ctype, pi.inst))
            used.add(key)
        if not letter:
            raise ValidationError("interactions must be nonempty")


def instantiate(system, r):
    r = tuple(r)
    check_r(system, r)
    return SystemView(system, r)


def format_letter(letter):
    return "{" + ", ".join(str(pi) for pi in sorted(letter)) + "}"


def format_word(word):
    if not word:
        return "eps"
    return " ".join(format_letter(a) for a in word)


def parse_word(text, view=None):
    """Parses `{type.port(j), ...} {...}` into a tuple of letters.

    With a view, letters are validated against the system; `eps` is the
    empty word.
    """
    text = text.strip()
    if text in ("", "eps"):
        return ()
    word = []
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        if text[pos] != "{":
            raise ValidationError("expected '{' at %r" % text[pos:pos + 20])
        end = text.find("}", pos)
        if end < 0:
            raise ValidationError("unterminated interaction in word")
        body = text[pos + 1:end].strip()
        pos = end + 1
        if not body:
            raise ValidationError("interactions must be nonempty")
        ports = []
        for item in body.split(","):
            item = item.strip()
            ports.append(_parse_port_instance(item))
        letter = frozenset(ports)
        if len(letter) != len(ports):
            raise ValidationError("interaction repeats a port: %s" % body)
        if view is not None:
            view.check_letter(letter)
        word.append(letter)
    return tuple(word)


def _parse_port_instance(item):
    if "." not in item or not item.endswith(")") or "(" not in item:
        raise ValidationError("bad port instance %r (want type.port(j))" % item)
    tname, rest = item.split(".", 1)
    pname, arg = rest[:-1].split("(", 1)
    tname, pname, arg = tname.strip(), pname.strip(), arg.strip()
    if not arg.isdigit():
        raise ValidationError("bad instance index in %r" % item)
    return PortInstance(tname, pname, int(arg))
