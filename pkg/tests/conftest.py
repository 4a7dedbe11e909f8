import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# table sizes vary a lot between draws, so per-example deadlines are noise
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
