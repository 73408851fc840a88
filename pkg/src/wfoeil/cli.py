"""Command-line front door: check / eval / compile / equiv / example /
laws / report.

Exit codes: 0 success, 1 validation or parse error, 2 resource budget
exceeded, 3 capability error (e.g. exact equivalence outside a field).
"""

import argparse
import os
import sys
import time

from . import architectures, report, semiring
from .automata import serialize_wfa
from .equivalence import sentence_equiv
from .errors import WfoeilError, ValidationError
from .formulas import validate as validate_formula
from .parser import load_system, load_formula
from .semantics import wfoeil_eval
from .system import check_r, instantiate, format_word, parse_word, format_letter
from .translate import translate_wfoeil, DEFAULT_STATE_BUDGET, DEFAULT_EDGE_BUDGET


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits 2 by default, which collides with the resource code
        self.print_usage(sys.stderr)
        raise SystemExit_(1, message)


class SystemExit_(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


def _parse_instances(text, system):
    """`master=2 slave=3`, `master=2,slave=3` or bare `2,3` in type order."""
    items = [p for chunk in text.replace(",", " ").split() for p in [chunk] if p]
    if not items:
        raise ValidationError("empty --instances")
    if all("=" not in item for item in items):
        try:
            r = tuple(int(item) for item in items)
        except ValueError:
            raise ValidationError("bad --instances %r" % text)
        check_r(system, r)
        return r
    counts = {}
    for item in items:
        if "=" not in item:
            raise ValidationError("bad --instances entry %r" % item)
        name, _, num = item.partition("=")
        if name not in system.by_name:
            raise ValidationError("unknown component type %r in --instances" % name)
        try:
            counts[name] = int(num)
        except ValueError:
            raise ValidationError("bad instance count %r" % num)
    r = tuple(counts.get(t.name, system.default_r[i] if system.default_r else 0)
              for i, t in enumerate(system.types))
    check_r(system, r)
    return r


def _parse_weights(text):
    out = {}
    for item in text.replace(",", " ").split():
        name, _, num = item.partition("=")
        if not _ or not name:
            raise ValidationError("bad --weights entry %r (want name=value)" % item)
        out[name] = num
    return out


def _get_view(args, system):
    if getattr(args, "instances", None):
        r = _parse_instances(args.instances, system)
    else:
        if system.default_r is None:
            raise ValidationError("system has no instances block; pass --instances")
        r = system.default_r
    return instantiate(system, r)


def _load(args):
    system = load_system(args.system, semiring_override=getattr(args, "semiring", None))
    formulas = []
    for path in args.formula:
        formula = load_formula(path, system)
        validate_formula(formula, system, sentence=True)
        formulas.append(formula)
    return system, formulas


def _read_words(args, view):
    words = []
    if args.word is not None:
        words.append(parse_word(args.word, view))
    if args.words_file is not None:
        with open(args.words_file) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    words.append(parse_word(line, view))
    if not words:
        raise ValidationError("no words: pass --word or --words-file")
    return words


def _read_alphabet(path, view):
    letters = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                word = parse_word(line, view)
                if len(word) != 1:
                    raise ValidationError("alphabet lines must hold exactly one interaction")
                letters.append(word[0])
    return tuple(letters)


# ------------------------------------------------------------ subcommands


def cmd_check(args):
    system, formulas = _load(args)
    view = _get_view(args, system)
    print("ok: system %s (%d types, %d interactions at r=%s)"
          % (os.path.basename(args.system), len(system.types),
             view.interaction_count(), tuple(view.r)))
    for path in args.formula:
        print("ok: formula %s" % os.path.basename(path))
    return 0


def cmd_eval(args):
    system, formulas = _load(args)
    formula = formulas[0]
    view = _get_view(args, system)
    words = _read_words(args, view)
    sr = system.semiring
    for i, word in enumerate(words):
        value = wfoeil_eval(view, formula, word, strict=not args.compositional)
        if args.format == "machine":
            print("value %d %s" % (i, sr.format_value(value)))
        else:
            print("%s -> %s" % (format_word(word), sr.format_value(value)))
    return 0


def cmd_compile(args):
    system, formulas = _load(args)
    formula = formulas[0]
    view = _get_view(args, system)
    alphabet = _read_alphabet(args.alphabet, view) if args.alphabet else None
    t0 = time.perf_counter()
    wfa = translate_wfoeil(view, formula, alphabet=alphabet,
                           strict=not args.compositional,
                           max_states=args.max_states, max_edges=args.max_edges)
    dt = time.perf_counter() - t0
    text = serialize_wfa(wfa)
    st = wfa.stats()
    stats = "stats states=%d transitions=%d seconds=%.3f" % (
        st["states"], st["transitions"], dt)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(stats)
    else:
        sys.stdout.write(text)
        print(stats, file=sys.stderr)
    return 0


def cmd_equiv(args):
    system, formulas = _load(args)
    view = _get_view(args, system)
    verdict = sentence_equiv(formulas[0], formulas[1], system, view.r,
                             strict=not args.compositional, bounded=args.bounded,
                             max_states=args.max_states, max_edges=args.max_edges)
    sr = system.semiring
    print("verdict %s" % ("equivalent" if verdict.equivalent else "inequivalent"))
    if verdict.witness is not None:
        print("witness %s" % format_word(verdict.witness))
        v1, v2 = verdict.values
        print("values %s %s" % (sr.format_value(v1), sr.format_value(v2)))
    print("basis %d" % verdict.basis_size)
    if verdict.bound is not None:
        print("bound %d" % verdict.bound)
    return 0


def cmd_example(args):
    weights = _parse_weights(args.weights) if args.weights else None
    # validate before writing anything
    architectures.generate(args.architecture, weights, semiring=args.semiring)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    wcb = os.path.join(out_dir, args.architecture + ".wcb")
    wfl = os.path.join(out_dir, args.architecture + ".wfl")
    source = architectures.system_source(args.architecture, weights)
    if args.semiring:
        source = source.replace("semiring natural", "semiring " + args.semiring, 1)
    with open(wcb, "w") as fh:
        fh.write(source)
    with open(wfl, "w") as fh:
        fh.write(architectures.sentence_source(args.architecture))
    print("wrote %s" % wcb)
    print("wrote %s" % wfl)
    r = architectures.CATALOG_R[args.architecture]
    for label, word in architectures.catalog_words(args.architecture, r):
        print("word %s %s" % (label, format_word(word)))
    return 0


def cmd_laws(args):
    names = args.names or list(semiring.BUILTIN_NAMES)
    failed = False
    for name in names:
        spec = semiring.builtin(name)
        rep = semiring.check_laws(spec, samples=args.samples, seed=args.seed)
        for law, entry in rep["laws"].items():
            line = "law %s %s %s" % (name, law, "PASS" if entry["ok"] else "FAIL")
            if not entry["ok"]:
                line += "  counterexample: %s" % (
                    ", ".join(spec.format_value(v) for v in entry["counterexample"]))
                failed = True
            print(line)
    return 1 if failed else 0


def cmd_report(args):
    r_values = tuple(int(x) for x in args.r.split(","))
    rows, csv_path, png_path = report.run_report(args.out, r_values,
                                                 semiring=args.semiring)
    print("r,states,transitions,seconds")
    for row in rows:
        print("%d,%d,%d,%.3f" % (row["r"], row["states"], row["transitions"],
                                 row["seconds"]))
    print("wrote %s" % csv_path)
    print("wrote %s" % png_path)
    return 0


# ------------------------------------------------------------ wiring


def _add_common(sub, formulas):
    sub.add_argument("system", help=".wcb system file")
    sub.add_argument("formula", nargs=formulas, help=".wfl formula file")
    sub.add_argument("--semiring", help="override the system's semiring")
    sub.add_argument("--instances", help="instance counts, e.g. 'master=2 slave=2'")
    sub.add_argument("--compositional", action="store_true",
                     help="drop the empty-word guard on unweighted compounds")
    sub.add_argument("--jobs", type=int, default=1,
                     help="accepted for compatibility; runs sequentially")


def build_parser():
    parser = _Parser(prog="wfoeil", description=__doc__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("check", help="parse and validate a system and formulas")
    _add_common(p, "+")
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("eval", help="evaluate a sentence on words")
    _add_common(p, 1)
    p.add_argument("--word", help="word literal, e.g. '{master.p_m(1), slave.p_s(1)}'")
    p.add_argument("--words-file", help="file with one word per line")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("compile", help="translate a sentence to a WFA file")
    _add_common(p, 1)
    p.add_argument("-o", "--output", help="output .wfa path (default: stdout)")
    p.add_argument("--alphabet", help="file restricting the translation alphabet")
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--max-edges", type=int, default=DEFAULT_EDGE_BUDGET)
    p.set_defaults(func=cmd_compile)

    p = subs.add_parser("equiv", help="decide equivalence of two sentences")
    _add_common(p, 2)
    p.add_argument("--bounded", type=int,
                   help="compare on all words up to this length instead of exactly")
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--max-edges", type=int, default=DEFAULT_EDGE_BUDGET)
    p.set_defaults(func=cmd_equiv)

    p = subs.add_parser("example", help="emit a catalog architecture as .wcb/.wfl")
    p.add_argument("architecture", choices=architectures.ARCHITECTURES)
    p.add_argument("--out", help="output directory (default: current)")
    p.add_argument("--weights", help="port weights, e.g. 'k_m=2 k_s=3'")
    p.add_argument("--semiring", help="semiring for the emitted system")
    p.set_defaults(func=cmd_example)

    p = subs.add_parser("laws", help="run the randomized semiring axiom suite")
    p.add_argument("names", nargs="*", metavar="semiring",
                   help="semirings to test (default: all built-ins)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_laws)

    p = subs.add_parser("report", help="star scaling sweep: CSV plus figure")
    p.add_argument("--out", default="report", help="output directory")
    p.add_argument("--r", default="2,3,4,5", help="instance counts to sweep")
    p.add_argument("--semiring", help="override the semiring")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code = args.func(args)
    except SystemExit_ as exc:
        print("error: %s" % exc.message, file=sys.stderr)
        code = exc.code
    except WfoeilError as exc:
        print("error: %s" % exc, file=sys.stderr)
        code = exc.exit_code
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        code = 1
    return code


if __name__ == "__main__":
    sys.exit(main())
