import re

_CRITERION_NAMES = {
    1: "innerness sweep",
    2: "solver anchors vs dense oracle",
    3: "character isomorphism round trip",
    4: "quasi-inner potentials",
    5: "heisenberg central family",
    6: "structural propositions",
    7: "groupoid composition algebra",
    8: "cli determinism",
}

_outcomes = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    if _outcomes.get(number) != "failed":
        _outcomes[number] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        outcome = _outcomes[number]
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome,
                                                          outcome.upper())
        name = _CRITERION_NAMES.get(number, "")
        terminalreporter.write_line(f"criterion {number} ({name}): {status}")
