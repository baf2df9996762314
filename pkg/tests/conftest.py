import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        title, ok, detail = mod.RESULTS[k]
        terminalreporter.write_line(f"criterion {k} {title}: {'PASS' if ok else 'FAIL'} ({detail})")
