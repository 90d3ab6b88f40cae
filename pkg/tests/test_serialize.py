import json

import pytest

from cyclic_mubs.core import validate_mub_partition
from cyclic_mubs.fixtures import FIXTURE_NAMES, fixture_text, load_fixture
from cyclic_mubs.serialize import generator_from_json, generator_spec, set_from_json, set_to_json


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixtures_load(name):
    f = load_fixture(name)
    assert f.n == 3 and f.name == name
    assert json.loads(fixture_text(name))["n"] == 3


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("nope")


@pytest.mark.parametrize("name", ["field3", "group3", "offset3"])
def test_generator_spec_roundtrip(name):
    g = load_fixture(name).generator()
    again = generator_from_json(json.loads(json.dumps(generator_spec(g))))
    assert again.C == g.C and again.G0 == g.G0


def test_bare_matrix_generator():
    g = load_fixture("offset3").generator()
    assert generator_from_json(g.C.to_list()).C == g.C


def test_set_json_roundtrip(valid_sets):
    s = valid_sets["offset3"]
    obj = json.loads(json.dumps(set_to_json(s)))
    assert obj["structure"]["counts"] == [0, 9, 0]
    assert all(c["partition"] for c in obj["classes"])
    back = set_from_json(obj)
    assert back.classes == s.classes
    assert validate_mub_partition(back).ok


def test_set_json_is_deterministic(valid_sets):
    s = valid_sets["group3"]
    assert json.dumps(set_to_json(s)) == json.dumps(set_to_json(s))
