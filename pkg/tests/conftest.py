import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # re-emit acceptance verdict lines; inline prints are eaten by capture
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(results):
        terminalreporter.write_line(
            f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} - {detail}")
