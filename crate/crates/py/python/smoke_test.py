"""Smoke test for the kenmotsu extension module.

Build and install with `pip install --no-build-isolation -e crates/py`,
then run `python crates/py/python/smoke_test.py`.
"""

from fractions import Fraction

import kenmotsu


def main() -> None:
    assert set(kenmotsu.catalog_names()) == {"kenmotsu5", "hyperbolic3", "flat3"}

    m = kenmotsu.Manifold.catalog("kenmotsu5")
    assert m.dim == 5 and m.has_contact

    geo = m.geometry()
    assert geo.scalar_curvature == -20
    assert geo.ricci()[0][0] == -4
    # ∇_{e1} e1 = -e5
    assert geo.connection()[0][0] == [0, 0, 0, 0, -1]

    assert m.validate().passed

    r = m.soliton(0)
    assert r.passed and r.exit_code == 0
    assert r.quantity("lambda") == Fraction(16, 5)
    assert r.quantity("mu") == 1
    assert r.labels["classification"] == "shrinking"
    assert m.soliton(Fraction(2)).quantity("lambda") == Fraction(21, 5)

    g = m.soliton("1/3", potential=[0, 0, 0, 0, 2], gradient=True)
    assert g.quantity("mu") == 2
    assert g.quantity("lambda") == 2 + Fraction(1, 6) + Fraction(1, 5)

    d = m.deform(2, 2, potential="xi")
    assert d.quantity("deformed.ricci")[0][0] == -2
    assert d.quantity("deformed.ricci_formula")[4][4] == -4
    assert d.labels["invariant"] == "no"

    flat = kenmotsu.Manifold.catalog("flat3")
    assert flat.validate().exit_code == 1

    again = kenmotsu.Manifold.from_json(m.to_json())
    assert again.to_json() == m.to_json()
    assert kenmotsu.Report.from_json(r.to_json()).to_json() == r.to_json()

    try:
        m.deform(0, 1)
    except kenmotsu.KenmotsuError:
        pass
    else:
        raise AssertionError("a = 0 must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
