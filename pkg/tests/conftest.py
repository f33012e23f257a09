import helpers


def pytest_terminal_summary(terminalreporter):
    if helpers.ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in helpers.ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
