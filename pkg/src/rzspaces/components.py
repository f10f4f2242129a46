"""Component group of the reduced moduli space.

``pi_0 = GL_d(Q_p)/GL_d(Z_p) x Z`` with ``d`` the height of the multiplicative
part. The coset space is an infinite discrete set and is returned as a
symbolic description; the ``Z`` factor is realised on lattices by
``dieulattice.kappa``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import EmptyPolygon
from .newton import NewtonPolygon, decompose_parts, require_symmetric

__all__ = ["ComponentGroupDescription", "component_group"]


@dataclass(frozen=True)
class ComponentGroupDescription:
    mult_height: int
    lattice_factor: bool
    z_factor: bool = True

    def pi0(self) -> str:
        d = self.mult_height
        if not self.lattice_factor:
            return "Z"
        return f"GL_{d}(Qp)/GL_{d}(Zp) x Z"

    def to_dict(self) -> dict:
        return {"mult_height": self.mult_height, "pi0": self.pi0()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def component_group(np_: NewtonPolygon) -> ComponentGroupDescription:
    if len(np_) == 0:
        raise EmptyPolygon("the moduli space of the trivial group is excluded")
    require_symmetric(np_)
    _, _, mult = decompose_parts(np_)
    return ComponentGroupDescription(mult, mult > 0, True)
