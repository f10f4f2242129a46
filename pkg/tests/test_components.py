import json

import pytest

from rzspaces.components import component_group
from rzspaces.errors import EmptyPolygon, NotSymmetric
from rzspaces.newton import NewtonPolygon, decompose_parts, enumerate_symmetric, parse_newton

NP = parse_newton


def test_examples():
    cg = component_group(NP("1:1,1:1"))
    assert (cg.mult_height, cg.lattice_factor, cg.z_factor) == (0, False, True)
    assert cg.pi0() == "Z"
    cg = component_group(NP("0:1,1:1,1:0"))
    assert (cg.mult_height, cg.lattice_factor, cg.z_factor) == (1, True, True)
    assert json.loads(cg.to_json()) == {"mult_height": 1, "pi0": "GL_1(Qp)/GL_1(Zp) x Z"}
    with pytest.raises(EmptyPolygon):
        component_group(NewtonPolygon(()))
    with pytest.raises(NotSymmetric):
        component_group(NP("1:2"))


def test_depends_only_on_multiplicative_height():
    for h in range(1, 9):
        for np_ in enumerate_symmetric(h):
            et, _, mult = decompose_parts(np_)
            cg = component_group(np_)
            assert cg.mult_height == mult == et
            assert cg.lattice_factor == (mult > 0)
            for block in ("1:1", "1:2,2:1", "1:1,1:1"):
                swapped = NewtonPolygon(tuple(s for s in np_ if s.slope() in (0, 1))) + NP(block)
                assert component_group(swapped) == cg
