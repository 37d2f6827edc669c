"""Repo-level pytest hook: acceptance-criteria summary.

Lives at the root so a combined run over tests/ and sidecar/tests/ prints
one PASS/FAIL line for every criterion test, wherever it is defined.
"""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    outcomes: dict[str, str] = {}
    for status, reports in terminalreporter.stats.items():
        if status not in ("passed", "failed", "error"):
            continue
        for report in reports:
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            name = nodeid.split("::", 1)[1]
            verdict = "PASS" if status == "passed" else "FAIL"
            # A failed setup/call outcome must win over a passed teardown.
            if outcomes.get(name) != "FAIL":
                outcomes[name] = verdict
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(outcomes):
        label = name.removeprefix("test_criterion_").replace("_", " ")
        terminalreporter.write_line(f"{outcomes[name]}  criterion {label}")
