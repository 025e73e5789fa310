import sys


def pytest_terminal_summary(terminalreporter):
    # pytest's fd capture eats even writes to sys.__stdout__, so the
    # acceptance tests stash their one-line verdicts and we echo them here.
    for name in ("test_acceptance", "tests.test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None and getattr(mod, "RESULT_LINES", None):
            terminalreporter.write_sep("=", "acceptance criteria")
            for line in mod.RESULT_LINES:
                terminalreporter.write_line(line)
            break
