"""Smoke test for the pendnet_py extension.

Build the extension first:
    cargo build --release -p pendnet-py --features extension-module
then run:
    python3 crates/python/python/smoke_test.py [path/to/libpendnet_py.so]
"""

import math
import os
import shutil
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
DEFAULT_LIB = os.path.join(HERE, "..", "..", "..", "target", "release", "libpendnet_py.so")

lib = sys.argv[1] if len(sys.argv) > 1 else DEFAULT_LIB
staging = tempfile.mkdtemp()
shutil.copy(lib, os.path.join(staging, "pendnet_py.so"))
sys.path.insert(0, staging)

import pendnet_py as pn  # noqa: E402


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    k3 = pn.Graph.from_spec("complete:3")
    ev = k3.laplacian_eigenvalues()
    assert all(close(a, b, 1e-10) for a, b in zip(ev, [0.0, 3.0, 3.0])), ev
    assert k3.edge_connectivity() == 2
    assert len(k3.sign_eigenvectors()) == 3
    assert k3.is_odd_balanced([-1, 0, 1])

    dw = pn.Potential.double_well()
    assert close(dw.eval(0.0, 0.0), 0.25, 1e-15)

    k2 = pn.System(pn.Graph(2, [(0, 1)]), dw, 0.2)
    h = k2.hamiltonian([0.2, 1 / 7], [0.0, 0.0])
    assert close(h, -1.92, 5e-3), h
    crit = pn.System(k3, dw, 0.1).critical_couplings()
    assert len(crit) == 1 and close(crit[0][0], 1 / 6, 1e-12) and crit[0][1] == 2

    ev = k2.synchrony_eigenvalues(0.0)
    assert any(close(abs(z.imag), math.sqrt(0.2), 1e-12) for z in ev)

    traj = k2.integrate([0.2, 1 / 7], [0.0, 0.0], 50.0)
    assert traj["energy_drift"] <= 1e-8, traj["energy_drift"]
    assert max(abs(x) for row in traj["q"] for x in row) < math.pi

    assert k2.reduce([-1, 1]) == (1, 0)
    kappas = [0.2 + 0.001 * k for k in range(101)]
    pf = k2.pitchforks([-1, 1], kappas)
    assert len(pf) == 1 and close(pf[0][1], 0.25, 1e-3) and close(pf[0][2], -47.0, 1e-2), pf

    lyap = k2.lyapunov([0.2, 1 / 7], [0.0, 0.0], t=200.0)
    assert len(lyap["exponents"]) == 4 and abs(sum(lyap["exponents"])) < 1e-6

    out = pn.run_cli(["spectrum", "--graph", "path:3"])
    assert "edge connectivity: 1" in out, out

    try:
        pn.Graph.from_spec("banana:3")
    except ValueError:
        pass
    else:
        raise AssertionError("bad graph spec accepted")

    print("pendnet_py smoke test passed")


if __name__ == "__main__":
    main()
