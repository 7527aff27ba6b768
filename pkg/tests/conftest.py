import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("GPOLY_HYPOTHESIS", "default"))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc
    if acc.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acc.LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
