"""Quick check that the extension module imports and agrees with known values."""

import math

import hyperspace as hs


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    line = hs.Space.real_line()
    assert close(line.distance(0.0, math.pi), math.pi)

    fm = hs.Space.french_metro()
    assert close(fm.distance((1.0, 1.0), (2.0, 2.0)), math.sqrt(2))
    assert close(fm.distance((1.0, 0.0), (0.0, 1.0)), 2.0)

    seq = hs.Space.sup_seq()
    assert close(seq.distance({1: 1.0}, {2: 2.0}), 2.0)

    plane = hs.Space.plane()
    a = hs.Set.finite(plane, [(0.0, 0.0), (3.0, 0.0)])
    c = hs.Set.finite(plane, [(0.0, 4.0)])
    assert close(a.distance(plane, (3.0, 4.0)), 4.0)
    pts = [(float(x), float(y)) for x in range(-5, 6) for y in range(-5, 6)]
    whole = hs.Probe(plane, "X", pts, exhaustive=True)
    h, exact = hs.hausdorff(plane, a, c, whole)
    assert exact and close(h, 5.0), h
    fam = hs.Family("{X}", [whole], complete=True)
    iv = hs.dsa(plane, fam, a, c)
    assert iv.exact and close(iv.lo, 0.5) and iv.hi == iv.lo, iv

    zo = hs.Space.discrete_line()
    intervals = hs.Family.discrete_intervals(40)
    grow = hs.Sequence.growing_intervals()
    whole_line = hs.Set.whole()
    for n in range(1, 21):
        v = hs.dsa(zo, intervals, grow[n], whole_line, 40)
        assert v.contains(2.0 ** -n) and v.hi - v.lo <= 2.0 ** -40, (n, v)
    verdict = hs.dsa_convergence(zo, grow, whole_line, intervals, 0.125, 20)
    assert verdict.passed and verdict.witnesses[0]["index"] == 4, verdict
    roots = hs.Family("S", [hs.Probe(zo, "k*sqrt2", [k * math.sqrt(2) for k in range(1, 41)])])
    s = hs.s_convergence(zo, grow, whole_line, roots, 0.5, 20)
    assert s.outcome == "fail" and s.witnesses[0]["point"] > 20, s

    lines = hs.Sequence.lines_through_origin()
    axis = hs.Set.line(0.0)
    w = hs.wijsman(plane, lines, axis, [(1.0, 1.0), (-2.0, 3.0)], 0.01, 1000)
    assert w.passed, w

    ids = hs.builtin_ids()
    assert "ex-4-11" in ids and len(ids) == 8
    report, met = hs.run_builtin("ex-4-11", format="csv")
    assert met and report.startswith("scenario,check_id,outcome,lo,hi,witness,ms\n"), report
    again, _ = hs.run_builtin("ex-4-11", format="csv")
    assert again == report

    text = """
name = "growing"
[space]
rule = "zero-one"
[sets.R]
type = "whole-space"
[families.A]
generator = "intervals"
count = 40
[sequences.An]
generator = "growing-intervals"
[[checks]]
id = "converges"
op = "dsa-convergence"
sequence = "An"
limit = "R"
family = "A"
epsilon = "2^-3"
expect = "pass"
"""
    _, met = hs.run_scenario(text, horizon=20)
    assert met
    report, met = hs.run_scenario(text, format="json", horizon=2)
    assert not met and '"outcome": "fail"' in report

    try:
        hs.run_builtin("nope")
    except ValueError as e:
        assert "ex-3-4" in str(e)
    else:
        raise AssertionError("unknown scenario accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
