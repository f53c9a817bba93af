ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(n: int, ok: bool, detail: str, elapsed: float, limit) -> None:
    lim = f", limit {limit} s" if limit is not None else ""
    line = f"criterion {n:2d} [PRIMARY] {'PASS' if ok else 'FAIL'}: {detail} ({elapsed:.2f} s{lim})"
    ACCEPTANCE_LINES[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
