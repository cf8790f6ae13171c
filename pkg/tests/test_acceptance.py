"""The ten acceptance criteria at their stated tolerances.

Each test prints its PASS/FAIL line; the lines are also collected and
repeated in a terminal summary section (see conftest.py) so they show up
in a plain ``pytest -v`` run.
"""
import json

import pytest

from negbeta import acceptance

LINES = []


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    r = acceptance.CRITERIA[number - 1]()
    LINES.append(r.line())
    print(r.line())
    assert r.passed, json.dumps(r.detail, default=str, indent=1)[:4000]
