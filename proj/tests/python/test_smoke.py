import json
import os
from fractions import Fraction

import pytest

import fttcpy

FIXTURES = os.environ.get(
    "FTTC_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "fixtures")
)


def fixture(name):
    with open(os.path.join(FIXTURES, name)) as f:
        return f.read()


def rows(assignment_json):
    doc = json.loads(assignment_json)["assignment"]
    return {
        agent: {house: Fraction(value) for house, value in row.items()}
        for agent, row in doc.items()
    }


def test_solve_reproduces_published_output():
    got = rows(fttcpy.solve(fixture("illustration.json"), "fttc"))
    expected = rows(fixture("illustration_output.json"))
    assert got == expected


def test_ttc_agreement_on_classic_market():
    market = fixture("classic_ttc.json")
    assert fttcpy.compare(market, "fttc", "ttc")
    assert fttcpy.compare(market, "fttc", "attc")


def test_verify_passes_on_fttc_output():
    market = fixture("illustration.json")
    output = fttcpy.solve(market, "fttc")
    report = json.loads(fttcpy.verify(market, output, ["sd-ir", "sd-efficiency", "sd-core"]))
    assert report["all_pass"]


def test_verify_finds_blocking_coalition():
    report = json.loads(
        fttcpy.verify(fixture("illustration.json"), fixture("cc_output.json"), ["sd-core"])
    )
    assert not report["all_pass"]
    witness = report["checks"]["sd-core"]["witness"]
    assert witness["kind"] == "blocking-coalition"
    assert witness["coalition"] == ["1", "2"]


def test_manipulation_witness_on_five_agent_fixture():
    market = fixture("imposs.json")
    found = None
    for agent in ["1", "2", "3", "4", "5"]:
        found = fttcpy.manipulate(market, agent)
        if found is not None:
            break
    assert found is not None


def test_generate_is_deterministic():
    a = fttcpy.generate(seed=7, agents=4, houses=4)
    b = fttcpy.generate(seed=7, agents=4, houses=4)
    assert a == b
    market = json.loads(a)
    assert len(market["agents"]) == 4


def test_malformed_market_raises():
    with pytest.raises(Exception):
        fttcpy.solve("{}", "fttc")
