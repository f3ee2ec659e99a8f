import os
import pathlib

import pytest

import hurwitz_trees as ht

FIXTURES = pathlib.Path(os.environ.get("HURWITZ_FIXTURE_DIR", pathlib.Path(__file__).parents[2] / "fixtures"))


def basic_tree():
    return ht.Tree(2, 1, 0, "r0", ["r0", "s", "f1", "f2"], [
        {"id": "a", "from": "r0", "to": "s", "eps": 1, "m": 1, "h": 0},
        {"id": "l1", "from": "s", "to": "f1", "eps": 0, "m": 0, "h": 1},
        {"id": "l2", "from": "s", "to": "f2", "eps": 0, "m": 0, "h": 1},
    ])


def test_basic_tree():
    t = basic_tree()
    assert t.is_valid()
    assert t.differente("s") == 1
    assert t.classify("s") == "multiplicative"
    assert sorted(t.leaves()) == ["l1", "l2"]
    r = t.check_disk()
    assert r["verdict"] == "RealizableProved"
    assert r["D3"][0]["status"] == "Certified"
    assert r["D3"][0]["verified"]


def test_json_round_trip():
    t = basic_tree()
    again = ht.Tree.from_json(t.to_json())
    assert again.is_equivalent(t)
    assert again.to_json() == t.to_json()


def test_fixture():
    t = ht.Tree.load(str(FIXTURES / "p5_disk.tree"))
    assert t.p == 5 and t.N == 4224
    assert t.is_valid()
    assert t.differente("s1") == 4224
    assert len(t.leaves()) == 33


def test_mutation_reported():
    t = ht.Tree(2, 1, 0, "r0", ["r0", "s", "f1", "f2"], [
        {"id": "a", "from": "r0", "to": "s", "eps": 2, "m": 1, "h": 0},
        {"id": "l1", "from": "s", "to": "f1", "eps": 0, "m": 0, "h": 1},
        {"id": "l2", "from": "s", "to": "f2", "eps": 0, "m": 0, "h": 1},
    ])
    axioms = {(v["axiom"], v["location"]) for v in t.validate()}
    assert ("H5", "s") in axioms
    with pytest.raises(ht.HurwitzError, match="InvalidTree"):
        t.check_disk()


def test_partitions_and_search():
    e = [4, 4, 1] + [-1] * 9
    assert ht.disk_bound(11, 5) == 3
    assert ht.criterion_small_partition(5, e, 3)
    blocks = ht.small_maximal_partition(5, e, 3)
    assert len(blocks) == 3
    assert sorted(i for b in blocks for i in b) == list(range(len(e)))
    assert ht.small_maximal_partition(5, e, 2) is None
    r = ht.search_point(2, [1, 1, 1, 1])
    assert r["found"] and r["field_order"] == 4
    assert len(set(r["point"])) == 4


def test_bad_input():
    with pytest.raises(ht.HurwitzError, match="InvalidArgument"):
        ht.criterion_small_partition(3, [1, 1], 1)
    with pytest.raises(ht.HurwitzError, match="SyntaxError"):
        ht.Tree.from_json("{")


def test_boundary():
    r = ht.boundary("Additive", 3, 2, m=1, n=1, rhos=["0", "1"])
    assert r["differente"] == 2
    assert r["order_p"]
    assert r["profile"] == ["2", "0"]


def test_annulus_types():
    t = ht.Tree(3, 1, 0, "r1", ["r1", "s", "r2", "f1", "f2"], [
        {"id": "a1", "from": "r1", "to": "s", "eps": 1, "m": 1, "h": 0},
        {"id": "a2", "from": "s", "to": "r2", "eps": 1, "m": -1, "h": 0},
        {"id": "l1", "from": "s", "to": "f1", "eps": 0, "m": 0, "h": 1},
        {"id": "l2", "from": "s", "to": "f2", "eps": 0, "m": 0, "h": 2},
    ])
    assert t.check_annulus()["verdict"] == "RealizableProved"
    c = t.conductor_type()
    assert c["type"] == "II" and c["consistent"]
    assert t.structure_checks()["ok"]
