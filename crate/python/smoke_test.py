"""Smoke test for the `alvero` Python extension.

Uses an installed `alvero` module if there is one, otherwise loads the
library from target/release (or target/debug) after `cargo build -p alvero-py`.
"""

import importlib.machinery
import importlib.util
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import alvero

        return alvero
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libalvero.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("alvero", str(lib))
            spec = importlib.util.spec_from_file_location("alvero", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["alvero"] = module
            return module
    sys.exit("alvero extension not found; run `cargo build --release -p alvero-py` first")


def main():
    al = load()

    f = al.generic_polynomial(3)
    assert str(f) == "x^3 + a1*x^2 + a2*x", f
    assert str(f.hasse(1)) == "3*x^2 + 2*a1*x + a2"
    p = al.Poly("a1^2 + a2", 2)
    assert p.specialize([2, 3]) == 7
    assert p.specialize([Fraction(1, 2), "1/4"]) == Fraction(1, 2)
    assert str(al.Poly("a1 + a2", 2) + al.Poly("-a1", 2)) == "a2"

    (r1,) = al.resultants(2)
    assert str(r1) == "-a1^2", r1
    assert al.resultant(al.UniPoly("x^2 + a1*x", 1), al.UniPoly("2*x + a1", 1)) == r1
    r = al.resultants(4)
    assert [q.isobaric_weight() for q in r] == [12, 8, 4]

    assert al.ideal_membership(al.Poly("a1^3", 1), [al.Poly("a1^2", 1)])
    assert al.radical_membership(al.Poly("a1", 1), [al.Poly("a1^2", 1)])
    assert not al.radical_membership(al.Poly("a2", 2), [al.Poly("a1", 2)])

    report = al.verify(3)
    assert report["verdict"] and report["radical_verdict"], report
    theorem = al.theorem(3, order="lex")
    assert theorem["verdict"] and [c["index"] for c in theorem["checks"]] == [1, 2]

    roots = al.real_roots([0.0, 0.0, -1.0, 1.0])
    assert roots == [(0.0, 2), (1.0, 1)], roots
    assert abs(al.alpha([0.0, 1.0, 2.0], 1, 1) - (1 - 3 ** -0.5)) < 1e-12
    assert al.check_interlacing([0.0, 0.0, 1.0])["verdict"]

    ace = al.find_ace(5, 4, seed=7)
    assert ace["converged"] and ace["record"]["residual"] < 1e-9
    assert ace["level"]["verdict"] and ace["chain"]["verdict"]

    try:
        al.find_ace(5, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("level 0 should be rejected")
    try:
        al.verify(8, budget=1000)
    except RuntimeError as e:
        assert "budget" in str(e)
    else:
        raise AssertionError("budget should run out")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
