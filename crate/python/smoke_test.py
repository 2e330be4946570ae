#!/usr/bin/env python3
"""Smoke test for the _thetalink extension module.

Builds nothing itself: expects `cargo build -p thetalink-py [--release]` to
have produced lib_thetalink.so, which is copied next to a temp dir and
imported. Run from the repository root:

    cargo build -p thetalink-py --release
    python3 python/smoke_test.py
"""

import importlib
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("lib_thetalink.so", "_thetalink.so", "lib_thetalink.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p thetalink-py --release")
    tmp = tempfile.mkdtemp(prefix="thetalink-py-")
    shutil.copy(built, pathlib.Path(tmp) / "_thetalink.so")
    sys.path.insert(0, tmp)
    return importlib.import_module("_thetalink")


def main():
    tl = load_module()

    # trefoil: P = λ(q² + q⁻² − λ), no E symbol
    trefoil = tl.Braid("{1,1,1}")
    assert trefoil.strands == 2
    assert trefoil.component_count() == 1
    p = json.loads(tl.homflypt(trefoil, format="json"))
    assert p["d_delta"] == 0 and p["d_omega"] == 0
    terms = {(t["q"], t["s"], t["E"]): t["c"] for t in p["num"]}
    assert terms == {
        (-2, 2, 0): "1",
        (0, 4, 0): "-1",
        (2, 2, 0): "1",
    }, terms
    assert tl.theta(trefoil) == tl.homflypt(trefoil)

    # Hopf link: engines agree, value carries E
    hopf = tl.Braid("{1,1}")
    values = {tl.theta(hopf, engine=e) for e in ("trace", "skein", "closed", "all")}
    assert len(values) == 1, values
    assert "E" in next(iter(values))
    assert hopf.linking_matrix() == [[0, 1], [1, 0]]

    # specialization: Θ_1 = P
    t1 = tl.theta_d(hopf, 1, format="json")
    assert json.loads(t1) == json.loads(tl.homflypt(hopf, format="json"))

    # the raw trace of σ₁² is 1 + (q − q⁻¹)z
    assert tl.trace_polynomial(hopf) == "-q^-1*z + 1 + q*z"

    # a catalogued P-equivalent pair is distinguished by Θ
    a = tl.catalog_braid("L10n76{1,1}")
    b = tl.catalog_braid("L11n425{1,0}")
    report = json.loads(tl.compare(a, b, name1="L10n76{1,1}", name2="L11n425{1,0}"))
    assert report["p_equal"] is True
    assert report["theta_equal"] is False
    assert all(len(report["specializations"][at]["num"]) > 0 for at in ("1/2", "1/3"))

    # moves behave: unknot from stabilized empty braid
    unknot = tl.Braid("{}", strands=1)
    assert tl.theta(unknot) == "1"
    assert tl.theta(unknot.stabilize(True)) == "1"
    assert unknot.disjoint_union(unknot).component_count() == 2

    # mirror flips the linking matrix
    assert hopf.mirror().linking_matrix() == [[0, -1], [-1, 0]]

    # E-system: trivial solution verifies with E = 1/d
    ok, (re, im) = tl.esystem_check(5)
    assert ok and abs(re - 0.2) < 1e-9 and abs(im) < 1e-9
    ok, (re, _) = tl.esystem_check(4, subset=[0, 2])
    assert ok and abs(re - 0.5) < 1e-9

    # JSON round trip through specialization
    v = tl.theta(hopf, format="json")
    assert json.loads(tl.specialize_e(v, 1, 1)) == json.loads(tl.homflypt(hopf, format="json"))

    print("smoke test passed:", len(tl.catalog_names()), "catalog entries")


if __name__ == "__main__":
    main()
