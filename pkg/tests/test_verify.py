from __future__ import annotations

import json
import math

import pytest

from lieheat import parse_group_spec
from lieheat.verify import ANCHORS, reference_volume, verify, verify_group


def test_report_shape():
    rep = verify_group(parse_group_spec("su2"), seed=1)
    assert rep["group"] == "su2"
    assert rep["overall"] == all(c["pass"] for c in rep["checks"])
    names = [c["name"] for c in rep["checks"]]
    assert len(names) == len(set(names))
    assert {c["paper_anchor"] for c in rep["checks"]} <= ANCHORS


def test_thread_count_does_not_change_output():
    a = json.dumps(verify(["torus:1", "su2", "so3", "su3"], seed=11, threads=1), sort_keys=True)
    b = json.dumps(verify(["torus:1", "su2", "so3", "su3"], seed=11, threads=4), sort_keys=True)
    assert a == b


def test_seed_moves_random_points():
    a = verify_group(parse_group_spec("su3"), seed=1)
    b = verify_group(parse_group_spec("su3"), seed=2)
    pick = lambda rep: next(c["measured"] for c in rep["checks"] if c["name"] == "chart_conjugation")
    assert pick(a) != pick(b)


@pytest.mark.parametrize("scale", [0.5, 2.0])
def test_scaled_groups_verify(scale):
    rep = verify([parse_group_spec(g, scale) for g in ("su2", "torus:2")], seed=0)
    assert rep["overall"], [c for g in rep["groups"] for c in g["checks"] if not c["pass"]]


def test_reference_volumes():
    assert reference_volume(parse_group_spec("torus:2", 4.0)) == pytest.approx((4 * math.pi) ** 2)
    assert reference_volume(parse_group_spec("su2")) == pytest.approx(4 * math.sqrt(2) * math.pi ** 2)
    assert reference_volume(parse_group_spec("so3")) == pytest.approx(4 * reference_volume(parse_group_spec("su2")))
