"""Smoke test for the lcmlab Python extension.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import math
import sys

import lcmlab


def main() -> int:
    f = lcmlab.Polynomial("x^2 + 1")
    assert f.degree == 2 and f.coeffs == [1, 0, 1]
    assert f.zone_constant == 3
    assert f(10) == 101
    assert f.discriminant() == -4
    assert lcmlab.Polynomial([1, 0, 1]) == f
    assert f.profile()["irreducibility"] == "proved"

    # lcm(2, 5, 10, 17, 26) = 2210 = 2 * 5 * 13 * 17
    led = lcmlab.build_ledger(f, 5)
    assert led.lcm() == 2210 and led.radical() == 2210
    assert led.product() == 2 * 5 * 10 * 17 * 26
    assert led.primes() == [2, 5, 13, 17]
    assert led.local(5)["alpha"] == 2
    assert led.local(7) is None

    s = lcmlab.summarize(lcmlab.build_ledger(f, 1000, workers=2))
    assert math.isclose(s["ratio_L"], 0.99127285661055942, rel_tol=1e-12), s["ratio_L"]

    lcm, rad, diff = lcmlab.oracle(lcmlab.Polynomial("2*x^3 - x + 7"), 300)
    assert diff == [], diff
    assert lcm % rad == 0

    assert lcmlab.roots_mod_p(f, 5) == [2, 3]
    assert lcmlab.roots_mod_p(f, 3) == []
    g = lcmlab.Polynomial("x^3 + 2")
    # (f(3) - f(1)) / (3 - 1) = 13, expanded: 1 + 3 + 9
    assert lcmlab.divided_difference_a(g, [1, 3]) == 13

    reports = lcmlab.verify(g, 200)
    assert len(reports) == len(lcmlab.CHECKS) == 7
    assert all(r["status"] == "pass" for r in reports), [r["check_name"] for r in reports]

    try:
        lcmlab.Polynomial("x^2 +")
    except ValueError:
        pass
    else:
        raise AssertionError("bad polynomial accepted")
    try:
        lcmlab.oracle(f, 100_000)
    except OverflowError:
        pass
    else:
        raise AssertionError("oracle cap not enforced")

    print("lcmlab smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
