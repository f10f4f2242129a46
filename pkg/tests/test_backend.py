import json
import os
import subprocess
import sys

SCRIPT = """
import json, rzspaces
from rzspaces import census as C
from rzspaces.newton import parse_newton
recs = C.enumerate_census(parse_newton("1:1,1:1"), 3, 1, (0, 1))
print(json.dumps({"backend": rzspaces.BACKEND, "rows": [r.basis_hex() for r in recs],
                  "kappa": [r.kappa for r in recs], "a": [r.a_inv for r in recs]}))
"""


def _run(flag):
    env = dict(os.environ, RZSPACES_NUMBA=flag)
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def test_backends_agree():
    fast, slow = _run("1"), _run("0")
    assert fast["backend"] == "numba" and slow["backend"] == "numpy"
    assert {k: v for k, v in fast.items() if k != "backend"} == \
           {k: v for k, v in slow.items() if k != "backend"}
