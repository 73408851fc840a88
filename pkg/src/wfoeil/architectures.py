"""The seven example architectures: systems, sentences and named words.

Sentences are stored as source text and parsed on demand, so the catalog
exercises the same front door as user input.  Words come from the worked
examples; `bad` (pipes/filters) and `sat` (request/response) are
constructed fixtures — `bad` violates the uniqueness constraint, `sat`
pairs each lookup reply with the registry's transfer port so the whole
sentence is satisfied.
"""

from .errors import ValidationError
from .parser import parse_system, parse_formula
from .formulas import validate as validate_formula
from .system import PortInstance

ARCHITECTURES = ("master_slave", "star", "repository", "pipes_filters",
                 "blackboard", "request_response", "publish_subscribe")

# port inventories: type -> ordered ports; type order fixes r
_PORTS = {
    "master_slave": [("master", ["p_m"]), ("slave", ["p_s"])],
    "star": [("node", ["p"])],
    "repository": [("repository", ["p_r"]), ("accessor", ["p_d"])],
    "pipes_filters": [("pipe", ["p_e", "p_o"]), ("filter", ["f_e", "f_o"])],
    "blackboard": [("blackboard", ["p_d", "p_a"]),
                   ("controller", ["p_r", "p_l", "p_e"]),
                   ("source", ["p_n", "p_t", "p_w"])],
    "request_response": [("registry", ["p_e", "p_u", "p_t"]),
                         ("service", ["p_r", "p_g", "p_s"]),
                         ("client", ["p_l", "p_o", "p_n", "p_q", "p_c"]),
                         ("coordinator", ["p_m", "p_a", "p_d"])],
    "publish_subscribe": [("publisher", ["p_a", "p_t"]),
                          ("topic", ["p_n", "p_r", "p_c", "p_s", "p_f"]),
                          ("subscriber", ["p_e", "p_g", "p_d"])],
}

CATALOG_R = {
    "master_slave": (2, 2),
    "star": (5,),
    "repository": (1, 4),
    "pipes_filters": (4, 3),
    "blackboard": (1, 1, 3),
    "request_response": (1, 2, 2, 2),
    "publish_subscribe": (2, 2, 3),
}

# weight assignment used by the fixture tests and `example` output:
# distinct small primes per port (1 everywhere would hide order/pairing bugs)
FIXTURE_WEIGHTS = {
    "master_slave": {"p_m": 2, "p_s": 3},
    "star": {"p": 2},
    "repository": {"p_r": 2, "p_d": 3},
    "pipes_filters": {"p_e": 2, "p_o": 3, "f_e": 5, "f_o": 7},
    "blackboard": {"p_d": 2, "p_a": 3, "p_r": 5, "p_l": 7, "p_e": 11,
                   "p_n": 2, "p_t": 3, "p_w": 5},
    "request_response": {"p_e": 2, "p_u": 3, "p_t": 5, "p_r": 2, "p_g": 3,
                         "p_s": 5, "p_l": 2, "p_o": 3, "p_n": 5, "p_q": 7,
                         "p_c": 11, "p_m": 2, "p_a": 3, "p_d": 5},
    "publish_subscribe": {"p_a": 2, "p_t": 3, "p_n": 2, "p_r": 3, "p_c": 5,
                          "p_s": 7, "p_f": 11, "p_e": 2, "p_g": 3, "p_d": 5},
}

_SENTENCES = {
    "master_slave":
        "ProdC x:slave . Sum y:master . hashw(master.p_m(y), slave.p_s(x))",

    "star":
        "Sum x:node . ProdC y:node (x != y) . hashw(node.p(x), node.p(y))",

    "repository":
        "Sum x:repository . ProdC y:accessor . "
        "hashw(repository.p_r(x), accessor.p_d(y))",

    "pipes_filters": """
(ProdC f:filter . Sum x:pipe . Sum y:pipe .
  (x != y) (x) (hashw(pipe.p_o(x), filter.f_e(f))
                (.) hashw(pipe.p_e(y), filter.f_o(f))))
(x)
(A z:pipe . A u:filter .
  (A v:filter (u != v) .
     (true * (pipe.p_o(z) & filter.f_e(u)) * true)
     & !(true * (pipe.p_o(z) & filter.f_e(v)) * true))
  | !(true * (pipe.p_o(z) & filter.f_e(u)) * true))
""",

    "blackboard": """
Sum b:blackboard . Sum c:controller .
  hashw(blackboard.p_d(b), controller.p_r(c))
  (.) (ProdS s:source . hashw(blackboard.p_d(b), source.p_n(s)))
  (.) (SumS y:source .
        hashw(controller.p_l(c), source.p_t(y))
        (.) hashw(controller.p_e(c), source.p_w(y), blackboard.p_a(b)))
""",

    "request_response": """
(Sum x1:registry .
   (ProdS x2:service . hashw(registry.p_e(x1), service.p_r(x2)))
   (.) (ProdS x3:client .
          hashw(client.p_l(x3), registry.p_u(x1))
          (.) hashw(client.p_o(x3), registry.p_t(x1))))
(.)
((SumS y2:service . Sum x4:coordinator . SumC y3:client .
    hashw(client.p_n(y3), coordinator.p_m(x4))
    (.) hashw(client.p_q(y3), coordinator.p_a(x4), service.p_g(y2))
    (.) hashw(client.p_c(y3), coordinator.p_d(x4), service.p_s(y2)))
 (x)
 (A y4:coordinator . A z3:client . A z2:service .
    !(true * hash(client.p_q(z3), coordinator.p_a(y4), service.p_g(z2)) * true)
    | (A t3:client . A t2:service (z2 != t2) .
         (true * hash(client.p_q(z3), coordinator.p_a(y4), service.p_g(z2)) * true)
         & !(true * hash(client.p_q(t3), coordinator.p_a(y4), service.p_g(t2)) * true))))
""",

    "publish_subscribe": """
SumS t:topic .
  (SumS p:publisher .
     hashw(publisher.p_a(p), topic.p_n(t))
     (.) hashw(publisher.p_t(p), topic.p_r(t)))
  (.) (SumS s:subscriber .
     hashw(subscriber.p_e(s), topic.p_c(t))
     (.) hashw(subscriber.p_g(s), topic.p_s(t))
     (.) hashw(subscriber.p_d(s), topic.p_f(t)))
""",
}


def _check_id(arch_id):
    if arch_id not in ARCHITECTURES:
        raise ValidationError("unknown architecture %r (choose from %s)"
                              % (arch_id, ", ".join(ARCHITECTURES)))


def _resolve_weights(arch_id, weights):
    ports = [p for _, plist in _PORTS[arch_id] for p in plist]
    alias = {}
    for p in ports:
        if p.startswith("p_"):
            k = "k_" + p[2:]
            alias[k] = None if k in alias else p
    out = {p: 1 for p in ports}
    for key, val in (weights or {}).items():
        if key in out:
            out[key] = val
        elif alias.get(key):
            out[alias[key]] = val
        else:
            raise ValidationError("architecture %r has no port named %r"
                                  % (arch_id, key))
    return out


def system_source(arch_id, weights=None):
    _check_id(arch_id)
    w = _resolve_weights(arch_id, weights)
    r = CATALOG_R[arch_id]
    out = ["wcb 1", "semiring natural", ""]
    for tname, plist in _PORTS[arch_id]:
        out.append("type %s" % tname)
        for p in plist:
            out.append("  port %s weight %s" % (p, w[p]))
        out.append("")
    out.append("instances " + " ".join(
        "%s=%d" % (t[0], n) for t, n in zip(_PORTS[arch_id], r)))
    return "\n".join(out) + "\n"


def sentence_source(arch_id):
    _check_id(arch_id)
    return "wfl 1\n" + _SENTENCES[arch_id].strip() + "\n"


def generate(arch_id, weights=None, semiring=None):
    """Returns (ParametricSystem, sentence AST), both validated."""
    _check_id(arch_id)
    system = parse_system(system_source(arch_id, weights),
                          semiring_override=semiring)
    text = _SENTENCES[arch_id]
    formula = parse_formula(text, system)
    validate_formula(formula, system, sentence=True)
    return system, formula


# ------------------------------------------------------------ example words


def _words_master_slave():
    def l(i, j):
        return frozenset([PortInstance("master", "p_m", i),
                          PortInstance("slave", "p_s", j)])
    return [("w1", (l(1, 1), l(2, 2))),
            ("w2", (l(1, 1), l(1, 2))),
            ("w3", (l(2, 1), l(1, 2))),
            ("w4", (l(2, 1), l(2, 2)))]


def _words_star():
    def l(i, j):
        return frozenset([PortInstance("node", "p", i), PortInstance("node", "p", j)])
    return [("w", (l(1, 2), l(1, 3), l(1, 4), l(1, 5)))]


def _words_repository():
    def l(j):
        return frozenset([PortInstance("repository", "p_r", 1),
                          PortInstance("accessor", "p_d", j)])
    return [("w", (l(1), l(2), l(3), l(4)))]


def _words_pipes_filters():
    def l(fp, fj, pp, pj):
        return frozenset([PortInstance("filter", fp, fj), PortInstance("pipe", pp, pj)])
    w1 = (l("f_e", 1, "p_o", 2), l("f_o", 1, "p_e", 1),
          l("f_e", 2, "p_o", 3), l("f_o", 2, "p_e", 2),
          l("f_e", 3, "p_o", 4), l("f_o", 3, "p_e", 2))
    w2 = (l("f_e", 1, "p_o", 3), l("f_o", 1, "p_e", 4),
          l("f_e", 2, "p_o", 4), l("f_o", 2, "p_e", 1),
          l("f_e", 3, "p_o", 2), l("f_o", 3, "p_e", 4))
    bad = (l("f_e", 1, "p_o", 2), l("f_o", 1, "p_e", 1),
           l("f_e", 2, "p_o", 2), l("f_o", 2, "p_e", 3),
           l("f_e", 3, "p_o", 4), l("f_o", 3, "p_e", 2))
    return [("w1", w1), ("w2", w2), ("bad", bad)]


def _words_blackboard():
    def bb(p):
        return PortInstance("blackboard", p, 1)

    def ct(p):
        return PortInstance("controller", p, 1)

    def sc(p, j):
        return PortInstance("source", p, j)

    L = frozenset
    w1 = (L([bb("p_d"), ct("p_r")]), L([bb("p_d"), sc("p_n", 1)]),
          L([bb("p_d"), sc("p_n", 2)]), L([bb("p_d"), sc("p_n", 3)]),
          L([ct("p_l"), sc("p_t", 2)]), L([ct("p_l"), sc("p_t", 3)]),
          L([ct("p_e"), sc("p_w", 2), bb("p_a")]),
          L([ct("p_e"), sc("p_w", 3), bb("p_a")]))
    w2 = (L([bb("p_d"), ct("p_r")]), L([bb("p_d"), sc("p_n", 3)]),
          L([bb("p_d"), sc("p_n", 1)]), L([bb("p_d"), sc("p_n", 2)]),
          L([ct("p_l"), sc("p_t", 3)]),
          L([ct("p_e"), sc("p_w", 3), bb("p_a")]))
    return [("w1", w1), ("w2", w2)]


def _words_request_response():
    def rg(p):
        return PortInstance("registry", p, 1)

    def sv(p, j):
        return PortInstance("service", p, j)

    def cl(p, j):
        return PortInstance("client", p, j)

    def co(p, j):
        return PortInstance("coordinator", p, j)

    L = frozenset
    w1 = (L([rg("p_e"), sv("p_r", 1)]), L([rg("p_e"), sv("p_r", 2)]),
          L([cl("p_l", 1), rg("p_u")]), L([cl("p_l", 2), rg("p_u")]),
          L([cl("p_o", 1), rg("p_u")]), L([cl("p_o", 2), rg("p_u")]),
          L([cl("p_n", 1), co("p_m", 2)]),
          L([cl("p_q", 1), co("p_a", 2), sv("p_g", 2)]),
          L([cl("p_c", 1), co("p_d", 2), sv("p_s", 2)]),
          L([cl("p_n", 2), co("p_m", 2)]),
          L([cl("p_q", 2), co("p_a", 2), sv("p_g", 2)]),
          L([cl("p_c", 2), co("p_d", 2), sv("p_s", 2)]))
    w2 = (L([rg("p_e"), sv("p_r", 2)]), L([rg("p_e"), sv("p_r", 1)]),
          L([cl("p_l", 1), rg("p_u")]), L([cl("p_l", 2), rg("p_u")]),
          L([cl("p_o", 2), rg("p_u")]), L([cl("p_o", 1), rg("p_u")]),
          L([cl("p_n", 2), co("p_m", 2)]),
          L([cl("p_q", 2), co("p_a", 2), sv("p_g", 2)]),
          L([cl("p_c", 2), co("p_d", 2), sv("p_s", 2)]))
    sat = (L([rg("p_e"), sv("p_r", 1)]), L([rg("p_e"), sv("p_r", 2)]),
           L([cl("p_l", 1), rg("p_u")]), L([cl("p_o", 1), rg("p_t")]),
           L([cl("p_l", 2), rg("p_u")]), L([cl("p_o", 2), rg("p_t")]),
           L([cl("p_n", 1), co("p_m", 2)]),
           L([cl("p_q", 1), co("p_a", 2), sv("p_g", 2)]),
           L([cl("p_c", 1), co("p_d", 2), sv("p_s", 2)]),
           L([cl("p_n", 2), co("p_m", 2)]),
           L([cl("p_q", 2), co("p_a", 2), sv("p_g", 2)]),
           L([cl("p_c", 2), co("p_d", 2), sv("p_s", 2)]))
    return [("w1", w1), ("w2", w2), ("sat", sat)]


def _words_publish_subscribe():
    def pb(p, j):
        return PortInstance("publisher", p, j)

    def tp(p, j):
        return PortInstance("topic", p, j)

    def sb(p, j):
        return PortInstance("subscriber", p, j)

    L = frozenset
    w1 = (L([pb("p_a", 1), tp("p_n", 1)]), L([pb("p_t", 1), tp("p_r", 1)]),
          L([tp("p_c", 1), sb("p_e", 1)]), L([tp("p_s", 1), sb("p_g", 1)]),
          L([tp("p_c", 1), sb("p_e", 3)]), L([tp("p_f", 1), sb("p_d", 1)]),
          L([tp("p_s", 1), sb("p_g", 3)]), L([tp("p_f", 1), sb("p_d", 3)]))
    w2 = (L([pb("p_a", 1), tp("p_n", 1)]), L([pb("p_t", 1), tp("p_r", 1)]),
          L([tp("p_c", 1), sb("p_e", 3)]), L([tp("p_c", 1), sb("p_e", 1)]),
          L([tp("p_s", 1), sb("p_g", 1)]), L([tp("p_c", 1), sb("p_e", 2)]),
          L([tp("p_s", 1), sb("p_g", 2)]), L([tp("p_s", 1), sb("p_g", 3)]),
          L([tp("p_f", 1), sb("p_d", 3)]), L([tp("p_f", 1), sb("p_d", 1)]),
          L([tp("p_f", 1), sb("p_d", 2)]))
    return [("w1", w1), ("w2", w2)]


_WORDS = {
    "master_slave": _words_master_slave,
    "star": _words_star,
    "repository": _words_repository,
    "pipes_filters": _words_pipes_filters,
    "blackboard": _words_blackboard,
    "request_response": _words_request_response,
    "publish_subscribe": _words_publish_subscribe,
}


def catalog_words(arch_id, r):
    _check_id(arch_id)
    if tuple(r) != CATALOG_R[arch_id]:
        raise ValidationError(
            "catalog words for %r exist at r=%s only" % (arch_id, CATALOG_R[arch_id]))
    return _WORDS[arch_id]()
