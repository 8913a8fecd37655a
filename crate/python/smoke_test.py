#!/usr/bin/env python3
"""Smoke test for the spreadkit_py extension module.

Builds nothing itself: run `cargo build -p spreadkit-py --release` (or a
debug build) first. The script locates the compiled cdylib under target/,
stages it under the import name spreadkit_py, and exercises the bindings.
"""

import fractions
import math
import pathlib
import shutil
import sys
import tempfile


def stage_module() -> pathlib.Path:
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / f"libspreadkit_py{ext}"
        for profile in ("release", "debug")
        for ext in (".so", ".dylib")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit(
            "spreadkit_py cdylib not found; run `cargo build -p spreadkit-py --release` first"
        )
    suffix = ".so" if built.suffix in (".so", ".dylib") else built.suffix
    stage = pathlib.Path(tempfile.mkdtemp(prefix="spreadkit_py_"))
    shutil.copy2(built, stage / f"spreadkit_py{suffix}")
    sys.path.insert(0, str(stage))
    return built


def main() -> None:
    built = stage_module()
    import spreadkit_py as sk

    # Gaussian binomials, including an exact big value.
    assert sk.gaussian_binomial(4, 2, 2) == 35
    assert sk.gaussian_binomial(8, 7, 2) == 255
    assert sk.gaussian_binomial(3, 5, 2) == 0
    assert sk.gaussian_binomial(100, 50, 2) == math.prod(
        (2 ** (100 - 50 + i) - 1) for i in range(1, 51)
    ) // math.prod((2**i - 1) for i in range(1, 51))

    # Field arithmetic in GF(16) = GF(2)[x]/(x^4 + x + 1).
    f16 = sk.Field(2, 4)
    assert f16.q == 16
    assert f16.modulus == [1, 1, 0, 0, 1]
    assert f16.expand(9) == [1, 0, 0, 1]
    assert f16.pack([1, 0, 0, 1]) == 9
    for a in range(1, 16):
        assert f16.mul(a, f16.inv(a)) == 1
        assert f16.pow(a, 16) == a

    # Canonical subspaces.
    f2 = sk.Field(2)
    u = sk.Subspace.from_generators(f2, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    v = sk.Subspace.from_generators(f2, 4, [[1, 1, 0, 0], [0, 1, 0, 0]])
    assert u == v and hash(u) == hash(v)
    w = sk.Subspace.from_generators(f2, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert u.distances(w) == (4, 0, 4, 2)
    assert len(u.points()) == 3

    # The multi-component construction at the solved point (2, 10, 4).
    code = sk.multi_component(2, 10, 4)
    assert len(code) == 65
    report = code.verify()
    assert report["valid"] and report["min_subspace_distance"] == 8
    assert report["hole_count"] == 48
    assert len(code.holes()) == 48
    assert code.partition_type() == [(4, 65), (1, 48)]

    # Bounds engine and provenance.
    assert sk.exact_value(2, 10, 4) == (65, "binary-r2")
    assert sk.exact_value(2, 11, 4) is None
    assert sk.lower_bound(2, 11, 4) == (129, "multi-component")
    assert sk.upper_bound(2, 11, 4) == (133, "theta")
    assert dict(sk.upper_bound_rules(2, 10, 4))["theta"] == 66
    assert sk.theta_floor(2, 4, 2) == 1
    assert sk.deficiency(2, 10, 4, 65) == 3
    record = sk.bounds_record(3, 10, 4)
    assert (record["lower"], record["upper"]) == (730, 733)

    # MRD codes and the lifted construction.
    mrd = sk.mrd_full_rank_code(2, 3, 4)
    assert len(mrd) == 16 and mrd.min_rank_distance() == 3
    assert sk.mrd_size(2, 3, 4, 3) == 16
    lifted = sk.lifted_mrd(2, 6, 3, 6)
    assert len(lifted) == 8 and lifted.verify()["valid"]

    # Tail condition and the forbidden-partition certificate.
    assert sk.tail_admissible(2, 1, 3, 1) == (False, "(ii)")
    assert sk.tail_admissible(2, 1, 2, 3) == (True, "(ii)")
    cert = sk.forbidden_partition_check(2, 4, 1, "q2")
    assert cert["certified"]
    assert cert["partition_type"] == "4^5 3^61 1^9"
    implied = fractions.Fraction(*cert["implied_total_holes"])
    assert implied == fractions.Fraction(2555, 255) > cert["available_holes"] == 9

    # Standard equations for the extremal A_2(8,6;3) = 34 code.
    sol = sk.solve_standard_equations(
        8, 3, 2, 34, [(2, 17), (3, 13), (4, 9), (5, 5)], span_dim_lower_bound=5
    )
    assert sol["free_range"] == (46, 51)
    assert sorted(sol["span_filtered"]) == [
        [0, 17, 187, 51],
        [1, 14, 190, 50],
        [3, 8, 196, 48],
    ]

    # Hyperplane spectrum identities on (2, 8, 3).
    code83 = sk.multi_component(2, 8, 3)
    spectrum = code83.hyperplane_spectrum()
    assert sum(r[0] for r in spectrum["records"]) == 33 * 31
    assert len(spectrum["records"]) == 255

    # Brute-force oracle on a desk-scale instance.
    result = sk.max_partial_spread(2, 4, 2)
    assert result["best_size"] == 5 and result["proved_optimal"]
    assert result["witness"].verify()["valid"]

    # Spread file round trip.
    with tempfile.TemporaryDirectory() as tmp:
        path = pathlib.Path(tmp) / "code.json"
        code.save(path, method="multi-component")
        loaded = sk.SubspaceCode.load(path, strict=True)
        assert loaded == code

    print(f"smoke test passed ({built})")


if __name__ == "__main__":
    main()
