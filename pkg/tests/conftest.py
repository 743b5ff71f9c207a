"""Shared pytest wiring: print the acceptance scoreboard after the run."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import SCOREBOARD
    except ImportError:
        return
    if not SCOREBOARD:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(SCOREBOARD):
        ok, detail = SCOREBOARD[num]
        terminalreporter.write_line(
            f"criterion {num:02d} {'PASS' if ok else 'FAIL'} — {detail}"
        )
