import pytest

from helpers import tiny_view
from wfoeil.errors import ValidationError
from wfoeil.formulas import (And, Atom, Cat, Const, Eq, Hash, HashW, Neq, Not,
                             Or, Quant, Shuf, TrueF, WCat, WPlus, WQuant,
                             WTimes, contains_fo, expand_hash_macro,
                             format_formula, free_variables, is_epil, is_pil,
                             is_weighted, reflect, validate, walk)
from wfoeil.parser import parse_formula
from wfoeil.semantics import pil_satisfies


def atom(v="x"):
    return Atom("sensor", "p", ("var", v))


def iatom(j=1):
    return Atom("sensor", "p", ("inst", j))


def test_layer_classification():
    assert is_pil(TrueF()) and is_pil(Not(iatom())) and is_pil(Or(iatom(), TrueF()))
    assert not is_pil(Cat(TrueF(), TrueF()))
    assert is_epil(Cat(TrueF(), Shuf(iatom(), iatom())))
    assert not is_epil(Quant("E", "x", "sensor", atom()))
    assert contains_fo(Quant("E", "x", "sensor", atom()))
    assert contains_fo(And(TrueF(), Eq("x", "y")))
    assert not contains_fo(Cat(iatom(), iatom()))
    assert is_weighted(WPlus(Const(1), Const(2)))
    assert not is_weighted(Or(TrueF(), TrueF()))


def test_free_variables():
    f = Quant("E", "x", "sensor", And(atom("x"), atom("y")))
    assert free_variables(f) == {"y"}
    g = WQuant("Sum", "x", "sensor", HashW([atom("x")]))
    assert free_variables(g) == set()
    assert free_variables(Eq("a", "b")) == {"a", "b"}


def system():
    return tiny_view().system


def test_validate_accepts_basic_sentence():
    f = Quant("E", "x", "sensor", atom("x"))
    validate(f, system(), sentence=True)


def test_validate_rejects_free_variables_in_sentence():
    with pytest.raises(ValidationError):
        validate(atom("x"), system(), sentence=True, env={"x": "sensor"})
    with pytest.raises(ValidationError, match="unbound"):
        validate(atom("x"), system())  # free variable without a declared sort
    validate(atom("x"), system(), env={"x": "sensor"})  # open formula


def test_validate_rejects_unknown_type_and_port():
    with pytest.raises(ValidationError):
        validate(Atom("nosuch", "p", ("inst", 1)), system())
    with pytest.raises(ValidationError):
        validate(Atom("sensor", "nope", ("inst", 1)), system())


def test_validate_rejects_negated_equality():
    f = Quant("E", "x", "sensor", Quant("E", "y", "sensor", Not(Eq("x", "y"))))
    with pytest.raises(ValidationError, match="x != y"):
        validate(f, system())


def test_negation_allows_or_free_cat_chain():
    chain = Cat(Cat(TrueF(), iatom()), TrueF())
    validate(Not(chain), system())
    bad = Cat(Cat(TrueF(), Or(iatom(), iatom(2))), TrueF())
    with pytest.raises(ValidationError):
        validate(Not(bad), system())


def test_sum_chain_negation_proviso():
    # under Ec, negation only applies to single-interaction formulas
    chain = Cat(Cat(TrueF(), atom("x")), TrueF())
    f = Quant("Ec", "x", "sensor", Not(chain))
    with pytest.raises(ValidationError, match="Ec/Es"):
        validate(f, system())
    validate(Quant("Ec", "x", "sensor", Not(atom("x"))), system())
    # the same negation is fine outside the chain
    validate(Not(chain), system(), env={"x": "sensor"})


def test_sum_chain_proviso_applies_to_weighted_quantifiers():
    chain = Cat(Cat(TrueF(), atom("x")), TrueF())
    f = WQuant("SumC", "x", "sensor", Not(chain))
    with pytest.raises(ValidationError):
        validate(f, system())
    validate(WQuant("ProdC", "x", "sensor", Not(chain)), system())


def test_cat_operands_must_be_word_level():
    with pytest.raises(ValidationError, match="Ec/Es/Ac/As"):
        validate(Cat(Quant("E", "x", "sensor", atom("x")), TrueF()), system())
    with pytest.raises(ValidationError):
        validate(Shuf(Eq("x", "y"), TrueF()), system())


def test_boolean_ops_reject_weighted_children():
    with pytest.raises(ValidationError, match=r"\(\+\)"):
        validate(Or(Const(1), TrueF()), system())
    with pytest.raises(ValidationError):
        validate(Not(Const(1)), system())


def test_quantifier_body_must_be_unweighted():
    with pytest.raises(ValidationError, match="Sum"):
        validate(Quant("E", "x", "sensor", HashW([atom("x")])), system())


def test_weighted_quantifier_body_may_be_weighted_or_not():
    validate(WQuant("Sum", "x", "sensor", HashW([atom("x")])), system())
    validate(WQuant("Sum", "x", "sensor", atom("x")), system())


def test_variable_shadowing_rejected():
    f = Quant("E", "x", "sensor", Quant("A", "x", "sensor", atom("x")))
    with pytest.raises(ValidationError, match="already bound"):
        validate(f, system())


def test_sort_mismatch_in_comparison():
    f = Quant("E", "x", "sensor", Quant("E", "y", "relay", Eq("x", "y")))
    with pytest.raises(ValidationError, match="cannot compare"):
        validate(f, system())


def test_const_must_lie_in_carrier():
    with pytest.raises(ValidationError, match="carrier"):
        validate(Const(-3), system())  # natural semiring


def test_instance_index_out_of_range():
    view = tiny_view()  # r = (2, 2)
    with pytest.raises(ValidationError):
        pil_satisfies(view, Atom("sensor", "p", ("inst", 5)),
                      (frozenset([("sensor", "p", 1)]),))


def test_expand_hash_macro_exact_interaction():
    view = tiny_view()
    f = parse_formula("hash(sensor.p(1), relay.s(2))", view.system)
    grounded = expand_hash_macro(f, view)
    hits = [a for a in view.enumerate_interactions()
            if pil_satisfies(view, grounded, (a,))]
    assert hits == [frozenset({("sensor", "p", 1), ("relay", "s", 2)})]


def test_format_round_trip_small():
    cases = [
        "E x:sensor . sensor.p(x) & !relay.s(1)",
        "(E x:sensor . sensor.p(x)) | relay.s(2)",
        "Sum x:sensor . hashw(sensor.p(x)) (+) 1",
        "true * (sensor.p(1) | sensor.q(1)) * true",
        "Ac x:sensor . sensor.p(x) ~ sensor.q(x)",
        "A x:sensor . A y:sensor . x = y | sensor.q(y)",
    ]
    sys_ = system()
    for src in cases:
        f1 = parse_formula(src, sys_)
        f2 = parse_formula(format_formula(f1, sys_.semiring), sys_)
        assert f1 == f2, src


def test_reflect_shapes():
    f = WQuant("SumC", "x", "sensor",
               WCat(HashW([atom("x")]), WTimes(Const(1), HashW([atom("x")]))))
    g = reflect(f, one=1)
    assert isinstance(g, Quant) and g.kind == "Ec"
    assert isinstance(g.body, Cat)
    assert isinstance(g.body.right, And)
    assert isinstance(g.body.right.left, TrueF)  # Const one -> true
    assert reflect(Const(0), one=1) == Not(TrueF())
    kinds = [n.kind for n in walk(reflect(WQuant("ProdS", "v", "relay", Const(1)), 1))
             if isinstance(n, Quant)]
    assert kinds == ["As"]
