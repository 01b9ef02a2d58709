#!/usr/bin/env python3
"""Build the transcover extension module and exercise its surface.

Run from anywhere: `python3 python/smoke_test.py`. Builds the cdylib with
cargo, stages it as an importable module in a temp directory, and asserts a
handful of known values end to end.
"""

import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_module(tmp: Path) -> None:
    subprocess.run(
        ["cargo", "build", "-p", "transcover-python"], cwd=ROOT, check=True
    )
    built = ROOT / "target" / "debug" / "libtranscover.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "debug" / "libtranscover.dylib"
    shutil.copy(built, tmp / "transcover.so")
    sys.path.insert(0, str(tmp))


def frac(text: str) -> Fraction:
    return Fraction(text)


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        stage_module(Path(tmp))
        import transcover as tc

        assert tc.SCHEMA_VERSION == "1"

        # Densities and periods of the running example {0, 1, 3}.
        s = tc.ZSet.parse("0,1,3")
        assert s.elements() == [0, 1, 3] and s.diameter() == 3 and len(s) == 3
        d = s.density()
        assert d == {"nu": "2/5", "kappa": "6/5", "efficiency": "5/6"}, d
        p = s.minimal_period()
        assert p["ell"] == 5 and frac(p["nu"]) == Fraction(2, 5), p
        assert tc.ZSet([0, 2]).minimal_period()["ell"] == 4

        # Extracted coverings verify; a corrupted one does not.
        cov = s.extract_covering()
        v = s.verify_covering(cov["period"], cov["offsets"])
        assert v["covers"] and frac(v["multiplicity"]) == Fraction(6, 5), (cov, v)
        assert not s.verify_covering(cov["period"], cov["offsets"][:1])["covers"]

        # Cyclic vs window covering of the same set.
        assert tc.cyclic_cover(6, [0, 1, 5])["tau"] == 2
        assert tc.ZSet([0, 1, 5]).interval_cover(6)["tau"] == 3
        greedy = tc.cyclic_cover(30, [0, 1, 5], exact=False)
        assert not greedy["exact"] and greedy["tau"] >= 10

        # Product group: (4-subset of Z_5)^2 needs 3 translates.
        prod = tc.product_cover(5, [0, 1, 2, 3], 5, [0, 1, 2, 3])
        assert prod["product"]["tau"] == 3 and prod["product"]["kappa"] == "48/25", prod
        assert prod["tau_lower"] <= 3 <= prod["tau_upper"]
        same = tc.group_cover([5, 5], [5 * a + b for a in range(4) for b in range(4)])
        assert same["tau"] == 3

        # Greedy recursion bound: 6 -> 3 -> 1 -> 0 is three rounds.
        assert tc.greedy_bound(6, 3) == 3

        # Two equal unit intervals a gap apart tile the line.
        two = tc.two_interval_best("1", "1", "1")
        assert frac(two["best"]["efficiency"]) == 1, two
        assert len(two["methods"]) >= 2

        # Certified lower bound for a union given as a string spec.
        bound = tc.interval_union_bound("0,1;5/4,2", delta="1/4")
        assert Fraction(1, 2) < frac(bound["efficiency"]) <= 1, bound

        # Pinned deterministic sampling and a reproducible experiment.
        assert tc.sample_subset(5, 3, 42) == [2, 3, 4]
        rep = tc.experiment(20, 3, 10, mode="exact", seed=1)
        assert rep["censored"] == 0 and len(rep["kappas"]) == 10, rep
        assert rep == tc.experiment(20, 3, 10, mode="exact", seed=1)

        # Error mapping: bad input raises ValueError.
        try:
            tc.ZSet.parse("0,x")
        except ValueError:
            pass
        else:
            raise AssertionError("ZSet.parse accepted garbage")

    print("smoke test passed")


if __name__ == "__main__":
    main()
