"""Commutative semirings the logic is weighted over.

Seven built-ins: boolean, natural, rational, minplus, maxplus, viterbi, fuzzy.
Only `rational` (exact Fractions) is a skew field, which is what the exact
equivalence decision needs.  Tropical carriers use native float infinities.
"""

from dataclasses import dataclass
from fractions import Fraction
import random

from .errors import ValidationError

INF = float("inf")
NEG_INF = float("-inf")

TOL = 1e-9


@dataclass(frozen=True)
class SemiringSpec:
    name: str
    zero: object
    one: object
    add: object  # binary callable
    mul: object  # binary callable
    eq: object  # binary callable, tolerance-aware for float carriers
    is_skew_field: bool
    is_exact: bool
    parse_value: object  # str -> value, raises ValidationError
    format_value: object  # value -> str
    contains: object  # value -> bool (carrier membership)
    sample: object  # rng -> value
    neg: object = None  # additive inverse, skew fields only

    def __repr__(self):
        return "SemiringSpec(%s)" % self.name


def _eq_exact(a, b):
    return a == b


def _eq_float(a, b):
    if a == b:
        return True
    try:
        return abs(a - b) <= TOL
    except (TypeError, OverflowError):
        return False


def _parse_bool(s):
    s = s.strip()
    if s in ("1", "true"):
        return True
    if s in ("0", "false"):
        return False
    raise ValidationError("not a boolean value: %r (use 0/1/true/false)" % s)


def _parse_nat(s):
    s = s.strip()
    if not s.isdigit():
        raise ValidationError("not a natural number: %r" % s)
    return int(s)


def _parse_rat(s):
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValidationError("not a rational: %r (use int, decimal or a/b)" % s)


def _parse_float(s):
    s = s.strip()
    if s == "inf":
        return INF
    if s == "-inf":
        return NEG_INF
    try:
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise ValidationError("not a numeric value: %r" % s)


def _format_float(v):
    if v == INF:
        return "inf"
    if v == NEG_INF:
        return "-inf"
    if v == int(v):
        return str(int(v))
    return repr(v)


def _is_num(v):
    return isinstance(v, (int, float, Fraction)) and not isinstance(v, bool)


def _mk_boolean():
    return SemiringSpec(
        name="boolean", zero=False, one=True,
        add=lambda a, b: a or b, mul=lambda a, b: a and b,
        eq=_eq_exact, is_skew_field=False, is_exact=True,
        parse_value=_parse_bool,
        format_value=lambda v: "true" if v else "false",
        contains=lambda v: isinstance(v, bool),
        sample=lambda rng: rng.random() < 0.5)


def _mk_natural():
    return SemiringSpec(
        name="natural", zero=0, one=1,
        add=lambda a, b: a + b, mul=lambda a, b: a * b,
        eq=_eq_exact, is_skew_field=False, is_exact=True,
        parse_value=_parse_nat, format_value=str,
        contains=lambda v: isinstance(v, int) and not isinstance(v, bool) and v >= 0,
        sample=lambda rng: rng.randrange(0, 7))


def _mk_rational():
    return SemiringSpec(
        name="rational", zero=Fraction(0), one=Fraction(1),
        add=lambda a, b: a + b, mul=lambda a, b: a * b,
        eq=_eq_exact, is_skew_field=True, is_exact=True,
        parse_value=_parse_rat, format_value=lambda v: str(v),
        contains=lambda v: isinstance(v, (int, Fraction)) and not isinstance(v, bool),
        sample=lambda rng: Fraction(rng.randrange(-6, 7), rng.randrange(1, 7)),
        neg=lambda a: -a)


def _tropical_sample(lo_sentinel):
    def sample(rng):
        if rng.random() < 0.125:
            return lo_sentinel
        return rng.randrange(0, 50) / 4.0  # dyadic: keeps +/min/max float-exact
    return sample


def _mk_minplus():
    return SemiringSpec(
        name="minplus", zero=INF, one=0.0,
        add=min, mul=lambda a, b: a + b,
        eq=_eq_float, is_skew_field=False, is_exact=False,
        parse_value=_parse_float, format_value=_format_float,
        contains=lambda v: _is_num(v) and (v == INF or 0 <= v < INF),
        sample=_tropical_sample(INF))


def _mk_maxplus():
    return SemiringSpec(
        name="maxplus", zero=NEG_INF, one=0.0,
        add=max, mul=lambda a, b: a + b,
        eq=_eq_float, is_skew_field=False, is_exact=False,
        parse_value=_parse_float, format_value=_format_float,
        contains=lambda v: _is_num(v) and (v == NEG_INF or 0 <= v < INF),
        sample=_tropical_sample(NEG_INF))


def _unit_sample(rng):
    return rng.randrange(0, 17) / 16.0  # dyadic values in [0,1]


def _mk_viterbi():
    return SemiringSpec(
        name="viterbi", zero=0.0, one=1.0,
        add=max, mul=lambda a, b: a * b,
        eq=_eq_float, is_skew_field=False, is_exact=False,
        parse_value=_parse_float, format_value=_format_float,
        contains=lambda v: _is_num(v) and 0 <= v <= 1,
        sample=_unit_sample)


def _mk_fuzzy():
    return SemiringSpec(
        name="fuzzy", zero=0.0, one=1.0,
        add=max, mul=min,
        eq=_eq_float, is_skew_field=False, is_exact=False,
        parse_value=_parse_float, format_value=_format_float,
        contains=lambda v: _is_num(v) and 0 <= v <= 1,
        sample=_unit_sample)


_BUILTINS = {
    "boolean": _mk_boolean,
    "natural": _mk_natural,
    "rational": _mk_rational,
    "minplus": _mk_minplus,
    "maxplus": _mk_maxplus,
    "viterbi": _mk_viterbi,
    "fuzzy": _mk_fuzzy,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name):
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValidationError("unknown semiring %r (built-ins: %s)"
                              % (name, ", ".join(BUILTIN_NAMES)))


def check_laws(spec, samples=1000, seed=0):
    """Randomized semiring-axiom suite.  Returns a report dict."""
    rng = random.Random(seed)
    add, mul, eq = spec.add, spec.mul, spec.eq
    zero, one = spec.zero, spec.one

    laws = [
        ("add_assoc", 3, lambda a, b, c: eq(add(add(a, b), c), add(a, add(b, c)))),
        ("add_comm", 2, lambda a, b: eq(add(a, b), add(b, a))),
        ("add_identity", 1, lambda a: eq(add(a, zero), a) and eq(add(zero, a), a)),
        ("mul_assoc", 3, lambda a, b, c: eq(mul(mul(a, b), c), mul(a, mul(b, c)))),
        ("mul_comm", 2, lambda a, b: eq(mul(a, b), mul(b, a))),
        ("mul_identity", 1, lambda a: eq(mul(a, one), a) and eq(mul(one, a), a)),
        ("zero_annihilates", 1, lambda a: eq(mul(a, zero), zero) and eq(mul(zero, a), zero)),
        ("distrib_left", 3, lambda a, b, c: eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))),
        ("distrib_right", 3, lambda a, b, c: eq(mul(add(a, b), c), add(mul(a, c), mul(b, c)))),
    ]
    report = {"semiring": spec.name, "samples": samples, "ok": True, "laws": {}}
    for name, arity, law in laws:
        failure = None
        for _ in range(samples):
            args = tuple(spec.sample(rng) for _ in range(arity))
            if not law(*args):
                failure = args
                break
        report["laws"][name] = {"ok": failure is None,
                                "counterexample": failure}
        if failure is not None:
            report["ok"] = False
    return report
