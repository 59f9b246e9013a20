import re

import pytest

from algden.verify import SUITES, run_suite

SMALL = {"count": 5, "height": 12, "max_c": 6}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_runs_pass(name):
    results = run_suite(name, **SMALL)
    assert results and all(r.ok for r in results), [r.as_dict() for r in results if not r.ok]


def test_statements_are_descriptive():
    for r in run_suite("examples"):
        assert not re.search(r"\d+\.\d+", r.statement)
        assert set(r.as_dict()) == {"suite", "check", "statement", "ok", "detail"}


def test_unknown_suite():
    with pytest.raises(KeyError, match="choose from all"):
        run_suite("nope")
