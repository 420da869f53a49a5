"""Smoke test for the colorlie_py extension module.

Build and run from the workspace root:

    cargo build -p colorlie-python --release
    cp target/release/libcolorlie_py.so crates/python/python/colorlie_py.so
    python3 crates/python/python/smoke_test.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import colorlie_py as cl  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parents[2] / "cli" / "tests" / "data"


def read(name):
    return (DATA / name).read_text()


def main():
    info = json.loads(cl.validate(read("heisenberg.json")))
    assert info["dim"] == 3, info

    series = json.loads(cl.series(read("heisenberg.json")))
    assert [s["dim"] for s in series["lower_central"]] == [3, 1, 0]
    assert series["nilpotent"]

    flag = json.loads(cl.triangularize(read("borel.json")))
    assert [b["flat"] for b in flag["basis"]] == [["1", "0"], ["0", "1"]]
    for m in flag["matrices"]:
        assert m["matrix"][1][0] == "0"

    chain = json.loads(cl.chain(read("heisenberg.json")))
    assert chain["dims"] == [0, 1, 2, 3]

    z3 = json.loads(cl.z3_demo())
    assert z3["triangularizable"] is False
    assert z3["exhaustive_orderings_checked"] == 6

    try:
        cl.triangularize(read("z3.json"))
    except cl.HypothesisError as e:
        assert json.loads(str(e))["kind"] == "TorsionGrading"
    else:
        raise AssertionError("expected HypothesisError")

    try:
        cl.triangularize(read("rotation.json"))
    except cl.FieldError as e:
        assert json.loads(str(e))["polynomial"] == "t^2 + 1"
    else:
        raise AssertionError("expected FieldError")

    try:
        cl.validate(read("float.json"))
    except ValueError as e:
        assert "floating-point" in str(e)
    else:
        raise AssertionError("expected ValueError")

    assert cl.char_poly([["0", "1"], ["-1", "0"]]) == "t^2 + 1"
    assert cl.rational_eigenvalues([["1/2", "1"], ["0", "1/2"]]) == [("1/2", 2)]
    print("smoke test passed")


if __name__ == "__main__":
    main()
