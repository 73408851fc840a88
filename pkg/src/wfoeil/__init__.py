"""Weighted first-order interaction logic over component-based systems:
parsing, denotational evaluation, translation to weighted automata, and
exact equivalence over skew fields.
"""

from .errors import WfoeilError, ValidationError, ParseError, ResourceError, CapabilityError
from .semiring import SemiringSpec, builtin, BUILTIN_NAMES, check_laws, TOL
from .system import (ParametricSystem, ComponentType, SystemView, PortInstance,
                     instantiate, validate as validate_system, check_r,
                     format_letter, format_word, parse_word)
from .formulas import (TrueF, Atom, Not, Or, And, Cat, Shuf, Eq, Neq, Quant, Hash,
                       Const, WPlus, WTimes, WCat, WShuf, WQuant, HashW,
                       validate as validate_formula, free_variables, format_formula)
from .parser import parse_formula, parse_system, load_formula, load_system
from .semantics import (pil_satisfies, epil_satisfies, foeil_satisfies,
                        wepil_eval, wfoeil_eval)
from .automata import (Nfa, Wfa, nfa_accepts, nfa_union, nfa_concat, nfa_shuffle,
                       nfa_intersect, nfa_complement, nfa_determinize_complete,
                       nfa_is_deterministic_complete, characteristic_wfa,
                       wfa_behavior, wfa_sum, wfa_hadamard, wfa_cauchy, wfa_shuffle,
                       wfa_trim, serialize_wfa, parse_wfa)
from .translate import translate_foeil, translate_wfoeil
from .equivalence import EquivVerdict, decide_equiv, bounded_equiv, sentence_equiv
from .architectures import (ARCHITECTURES, CATALOG_R, FIXTURE_WEIGHTS,
                            generate, catalog_words, system_source, sentence_source)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
