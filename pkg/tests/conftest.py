from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


_criteria: dict[int, list] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n, title = props["criterion"]
    row = _criteria.setdefault(n, [title, True, 0.0])
    row[1] = row[1] and not report.failed
    row[2] += report.duration


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, after the usual summary."""
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n, (title, ok, secs) in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {n:>2}  {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
