import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the one-line acceptance results past the output capture."""
    mod = next((m for name, m in sys.modules.items()
                if name.endswith("test_acceptance") and m is not None), None)
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
