"""Records acceptance-criterion outcomes and prints one line per criterion
at the end of the run."""

ACCEPTANCE_RESULTS = {}

CRITERIA = {
    1: "differential translation soundness",
    2: "boolean reflection",
    3: "frozen fixture values",
    4: "series operation laws",
    5: "equivalence decision",
    6: "order sensitivity",
    7: "semiring laws",
    8: "scaling smoke test",
}


def record(n, passed):
    ACCEPTANCE_RESULTS[n] = ACCEPTANCE_RESULTS.get(n, True) and passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n in ACCEPTANCE_RESULTS:
            verdict = "PASS" if ACCEPTANCE_RESULTS[n] else "FAIL"
        else:
            verdict = "NOT RUN"
        terminalreporter.write_line(
            "ACCEPTANCE %d %s  (%s)" % (n, verdict, CRITERIA[n]))
