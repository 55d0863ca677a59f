"""A1-A10, run exactly (tolerance 0).  One summary line per criterion is printed."""

import pytest

from instanton import acceptance

SEED = 0
SAMPLES = 3


@pytest.mark.parametrize("name", list(acceptance.CRITERIA))
def test_criterion(name, capsys):
    rep = acceptance.run(name, seed=SEED, samples=SAMPLES)
    with capsys.disabled():
        print("\n" + acceptance.summary_line(rep))
    assert rep["pass"], rep["details"]
