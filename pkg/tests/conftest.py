import sys

import pytest


@pytest.fixture
def report(request):
    """Write a line past pytest's output capture (used by the acceptance
    gate so its pass/fail verdicts always appear in the run log)."""
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def _emit(line: str) -> None:
        if capman is not None:
            with capman.global_and_fixture_disabled():
                sys.stdout.write(line + "\n")
                sys.stdout.flush()
        else:
            print(line, flush=True)

    return _emit
