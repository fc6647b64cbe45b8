import json
import random
from fractions import Fraction

import pytest

from adicspace import bratteli as B
from adicspace.errors import (BadMeasure, BadOrder, DepthExceeded, EmptyFiber,
                              MissingRoot)
from conftest import random_diagram


def odometer_spec(depth=3, p0="1/2", p1="1/2"):
    spec = {"levels": [["v"] for _ in range(depth + 1)], "edges": [], "orders": {}}
    for n in range(depth):
        spec["edges"].append([
            {"id": f"e{n}_0", "src": 0, "dst": 0, "p": p0},
            {"id": f"e{n}_1", "src": 0, "dst": 0, "p": p1},
        ])
        spec["orders"][f"{n + 1}/0"] = [f"e{n}_0", f"e{n}_1"]
    return spec


def test_validate_odometer_spec():
    d = B.validate_diagram(odometer_spec())
    assert d.depth == 3
    assert [d.k(n) for n in range(4)] == [1, 1, 1, 1]


def test_validate_rejects_bad_measure():
    with pytest.raises(BadMeasure):
        B.validate_diagram(odometer_spec(p0="1/3", p1="1/3"))
    with pytest.raises(BadMeasure):
        B.validate_diagram(odometer_spec(p0="0", p1="1"))


def test_validate_rejects_missing_root():
    spec = odometer_spec()
    spec["levels"][0] = ["a", "b"]
    spec["edges"][0][0]["src"] = 1
    with pytest.raises(MissingRoot):
        B.validate_diagram(spec)


def test_validate_rejects_bad_order():
    spec = odometer_spec()
    spec["orders"]["1/0"] = ["e0_0", "e0_0"]
    with pytest.raises(BadOrder):
        B.validate_diagram(spec)
    del spec["orders"]["1/0"]
    with pytest.raises(BadOrder):
        B.validate_diagram(spec)


def test_validate_rejects_empty_fiber():
    spec = {
        "levels": [["v"], ["a", "b"], ["c"]],
        "edges": [
            [{"id": "x", "src": 0, "dst": 0, "p": "1"}],
            [{"id": "y", "src": 0, "dst": 0, "p": "1"},
             {"id": "z", "src": 1, "dst": 0, "p": "1"}],
        ],
        "orders": {"1/0": ["x"], "1/1": [], "2/0": ["y", "z"]},
    }
    # vertex 1/1 has no incoming edge
    with pytest.raises(EmptyFiber):
        B.validate_diagram(spec)


def test_morse_diagram_is_valid_and_crossed():
    d = B.morse_diagram(3)
    assert [e.id for e in d.in_edges[(2, 0)]] == ["e1_0_0", "e1_1_0"]
    assert [e.id for e in d.in_edges[(2, 1)]] == ["e1_1_1", "e1_0_1"]
    assert all(e.p == Fraction(1, 2) for e in d.edges[1])


def test_json_round_trip():
    d = B.circulant_diagram(3, 4)
    again = B.validate_diagram(json.loads(json.dumps(B.diagram_to_json(d))))
    assert B.diagram_to_json(again) == B.diagram_to_json(d)


# -- enumeration order -----------------------------------------------------------

def test_odometer_enumeration_is_binary_counting():
    d = B.odometer_diagram(3)
    paths = B.enumerate_paths(d, 1)
    as_bits = [tuple(int(e.id[-1]) for e in p.edges) for p in paths]
    assert as_bits == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_morse_single_path_per_level_one_vertex():
    d = B.morse_diagram(2)
    assert len(B.enumerate_paths(d, 0, v=0)) == 1
    assert len(B.enumerate_paths(d, 0, v=1)) == 1


def test_enumerate_depth_guard():
    d = B.odometer_diagram(2)
    with pytest.raises(DepthExceeded):
        B.enumerate_paths(d, 2)


# -- successor -------------------------------------------------------------------

def path_by_bits(d, bits):
    return B.FinitePath(tuple(d.edges[n][b] for n, b in enumerate(bits)))


def test_odometer_successor_increments_binary():
    d = B.odometer_diagram(3)
    assert B.successor(d, path_by_bits(d, (1, 0, 0))) == path_by_bits(d, (0, 1, 0))
    assert B.successor(d, path_by_bits(d, (1, 1, 1))) is None


def test_successor_keeps_terminal_vertex():
    rng = random.Random(7)
    d = random_diagram(rng, depth=4)
    for v in range(d.k(4)):
        p = B.minimal_path_into(d, 4, v)
        while p is not None:
            assert p.terminal == (4, v)
            p = B.successor(d, p)


def test_successor_cycles_through_enumeration():
    rng = random.Random(3)
    for _ in range(10):
        d = random_diagram(rng, depth=3)
        for v in range(d.k(3)):
            expected = B.enumerate_paths(d, 2, v=v)
            assert len(expected) == B.count_paths_into(d, 3, v)
            p = B.minimal_path_into(d, 3, v)
            visited = [p]
            while (q := B.successor(d, p)) is not None:
                visited.append(q)
                p = q
            assert [x.ids() for x in visited] == [x.ids() for x in expected]
            assert p == B.maximal_path_into(d, 3, v)


def test_predecessor_inverts_successor():
    rng = random.Random(11)
    d = random_diagram(rng, depth=4)
    for p in B.enumerate_paths(d, 3):
        q = B.successor(d, p)
        if q is not None:
            assert B.predecessor(d, q) == p


# -- cylinder measures ------------------------------------------------------------

def test_cylinder_measures_frozen():
    d = B.odometer_diagram(3)
    assert B.cylinder_measure(d, path_by_bits(d, (0, 1, 0))) == Fraction(1, 8)
    m = B.morse_diagram(2)
    p = B.minimal_path_into(m, 2, 0)
    assert B.cylinder_measure(m, p) == Fraction(1, 4)


def test_cylinder_measures_sum_to_one():
    rng = random.Random(23)
    for _ in range(5):
        d = random_diagram(rng, depth=4)
        for n in range(d.depth):
            total = sum(B.cylinder_measure(d, p) for p in B.enumerate_paths(d, n))
            assert total == 1


def test_maximal_path_count_is_vertex_count():
    d = B.circulant_diagram(5, 4)
    assert [B.maximal_path_count(d, n) for n in range(4)] == [5, 5, 5, 5]


def test_rotation_diagram_path_operations():
    from adicspace import rotation as R

    cf = R.CFExpansion([n + 1 for n in range(1, 11)])
    d, _ = R.rotation_diagram(cf, 4)
    # a(1) = 2 paths of length one into the first vertex, one into the second
    assert len(B.enumerate_paths(d, 0, v=0)) == cf.a(1)
    assert len(B.enumerate_paths(d, 0, v=1)) == 1
    assert B.count_paths_into(d, 3, 0) == cf.q(3)
    assert B.count_paths_into(d, 3, 1) == cf.q(2)
    # measure of the two-edge cylinder through the outgoing edge: the
    # probabilities multiply to an enclosure of alpha(2)
    e0 = d.in_edges[(1, 0)][0]
    e1 = next(e for e in d.edges[1] if e.src == 0 and e.dst == 1)
    measure = B.cylinder_measure(d, B.FinitePath((e0, e1)))
    from adicspace import rotation
    assert measure.intersects(rotation.alpha_n(cf, 2))


def test_rotation_cylinder_measures_enclose_one():
    from adicspace import rotation as R
    from adicspace.intervals import RatInterval

    cf = R.CFExpansion([2, 3, 2, 4, 2, 2])
    d, _ = R.rotation_diagram(cf, 3)
    for n in range(3):
        total = RatInterval(0)
        for p in B.enumerate_paths(d, n):
            total = total + B.cylinder_measure(d, p)
        assert total.contains(1)
