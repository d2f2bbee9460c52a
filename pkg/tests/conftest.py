import pytest

from beamtrain import available_backends, use_backend

BACKENDS = sorted(available_backends())

# criterion id -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(params=BACKENDS)
def backend(request):
    with use_backend(request.param) as kernels:
        yield kernels


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
