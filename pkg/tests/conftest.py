from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_acceptance_errors: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call" and report.failed:
        _acceptance_errors[report.nodeid] = report.longrepr.reprcrash.message if hasattr(
            report.longrepr, "reprcrash") else str(report.longrepr)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", {}) if mod else {}
    if not results and not _acceptance_errors:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=str):
        terminalreporter.write_line(results[key])
    for nodeid, msg in _acceptance_errors.items():
        if not any(f"test_{k}_" in nodeid or f"[g={k}" in nodeid for k in results):
            terminalreporter.write_line(f"{nodeid.split('::')[-1]}: FAIL (error: {msg.splitlines()[0]})")
