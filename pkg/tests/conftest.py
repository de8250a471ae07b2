import pathlib
import sys

SRC = pathlib.Path(__file__).resolve().parent.parent / "src"

try:
    import tapmeans  # noqa: F401
except ImportError:
    sys.path.insert(0, str(SRC))

# filled by the acceptance tests; echoed after the run so the checklist
# survives output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checklist")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
