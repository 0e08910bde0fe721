from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from lsgame.compiler import (
    CompilerError, build_counterexample, classify, compile_lpc, gadgetize,
    lower_and_compile, lower_ehlpc, max_alice_outputs, nice_embed,
    peel_one, size_forecast,
)
from lsgame.gf2core import BinaryLinearSystem, gf2_solve
from lsgame.games import classical_perfect
from lsgame.presentations import (
    J, ExtendedHomogeneous, Homogeneous, LinearPlusConjugacy, k_group, presentation_of,
)


@st.composite
def lpcs(draw, max_n=5, max_m=3, max_c=3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    rows = tuple(draw(st.integers(1, (1 << n) - 1)) for _ in range(m))
    b = tuple(draw(st.integers(0, 1)) for _ in range(m))
    c = draw(st.integers(0, max_c))
    C = tuple(tuple(draw(st.integers(0, n - 1)) for _ in range(3)) for _ in range(c))
    return LinearPlusConjugacy(BinaryLinearSystem(n, rows, b), C)


@st.composite
def ehlpcs(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 2))
    rows = tuple(draw(st.integers(1, (1 << n) - 1)) for _ in range(m))
    ell = draw(st.integers(1, 3))
    C0 = tuple(tuple(draw(st.integers(0, n - 1)) for _ in range(3))
               for _ in range(draw(st.integers(0, 2))))
    C1 = tuple((draw(st.integers(0, ell - 1)), draw(st.integers(0, n - 1)),
                draw(st.integers(0, n - 1))) for _ in range(draw(st.integers(0, 3))))
    L = tuple(tuple(draw(st.integers(0, 3)) if j < i else 0 for j in range(ell))
              for i in range(ell))
    names = tuple(f"x{i + 1}" for i in range(n))
    ys = tuple(f"y{i + 1}" for i in range(ell))
    return ExtendedHomogeneous(names, rows, C0, ys, C1, L)


@settings(max_examples=150, deadline=None)
@given(lpcs())
def test_compile_matches_forecast(g):
    sys, psi, rep = compile_lpc(g)
    fc = size_forecast(g)
    assert (sys.n, sys.m) == fc.as_tuple() == rep.as_tuple()
    assert set(psi.source) == set(g.names) | {J}
    # original rows survive unchanged at the top
    assert sys.rows[:g.m] == g.sys.rows and sys.b[:g.m] == g.sys.b
    assert all(bin(r).count("1") <= max(3, max(bin(x).count("1") for x in g.sys.rows))
               for r in sys.rows)


@settings(max_examples=100, deadline=None)
@given(lpcs())
def test_nice_embed_is_nice(g):
    nice, psi = nice_embed(g)
    assert nice.is_nice()
    assert (nice.n, nice.m, len(nice.C)) == (4 * g.n + 1 + len(g.C),
                                             g.m + 2 * g.n + len(g.C), g.n + len(g.C))


def test_gadgetize_requires_nice():
    sys = BinaryLinearSystem.from_supports(3, [[1, 2]], [0])
    with pytest.raises(CompilerError):
        gadgetize(LinearPlusConjugacy(sys, ((1, 0, 2),)))


@settings(max_examples=100, deadline=None)
@given(ehlpcs())
def test_ehlpc_lowering_matches_forecast(g):
    h, psi = lower_ehlpc(g)
    fc = size_forecast(g)
    assert (h.n, h.m, len(h.C)) == (fc.variables, fc.equations, fc.triples)
    assert set(g.names) <= set(h.names)
    assert set(psi.source) >= set(g.names) | set(g.y_names)


def test_peel_one_removes_last_generator():
    g, _ = k_group()
    out, psi, step = peel_one(g)
    assert step.removed == "y" and (step.z, step.w) == ("z1", "w1")
    assert out.y_names == ("x",) and out.ell == 1
    assert str(psi["y"]) == "z1 w1"
    with pytest.raises(ValueError):
        peel_one(ExtendedHomogeneous(("a",), (1,), (), (), (), ()))


def test_counterexample_pipeline():
    sys, psi, report = build_counterexample()
    assert (sys.n, sys.m) == (235, 184)
    names = [p.name for p in report.passes]
    assert names == ["k_group", "lower_ehlpc", "hnn_z2", "nice_embed", "gadgetize"]
    sizes = {p.name: p.after for p in report.passes}
    assert sizes["lower_ehlpc"] == {"variables": 12, "equations": 1, "triples": 9}
    assert sizes["hnn_z2"] == {"variables": 14, "equations": 2, "triples": 10}
    assert sizes["nice_embed"]["variables"] == 67
    assert sum(sys.b) == 1
    assert max_alice_outputs(sys) == 4
    doc = report.to_json()
    json.dumps(doc)
    assert doc["designated"]["target"] == "a"
    assert doc["generator_map"]["a"] == "a"
    assert str(psi["y"]) == "z1 w1"


def test_counterexample_is_deterministic():
    a = build_counterexample()
    b = build_counterexample()
    assert a[0] == b[0]
    assert a[2].to_json() == b[2].to_json()


def test_flagship_classical_solvability_is_reported():
    sys, _, _ = build_counterexample()
    x = gf2_solve(sys)
    assert classical_perfect(sys) == (x is not None)
    if x is not None:
        assert sys.is_solution(x)


def test_classify_roundtrips_typed_groups():
    g, _ = k_group()
    back = classify(presentation_of(g))
    assert isinstance(back, ExtendedHomogeneous)
    assert size_forecast(back) == size_forecast(g)
    h = Homogeneous(("a", "b", "c"), (0b111,), ((0, 1, 2),))
    assert classify(presentation_of(h)) == h
    sys = BinaryLinearSystem.from_supports(3, [[0, 1, 2]], [1])
    lpc = LinearPlusConjugacy(sys, ((0, 1, 2),))
    back = classify(presentation_of(lpc))
    assert back.sys.rows == lpc.sys.rows and back.sys.b == (1,) and back.C == lpc.C


def test_classify_rejects_unknown_shapes():
    from lsgame.presentations import Presentation, word
    with pytest.raises(ValueError):
        classify(Presentation(("a", "b"), (word("a b a b"),), frozenset()))


def test_hlpc_without_target_is_read_homogeneously():
    h = Homogeneous(("a", "b"), (0b11,), ())
    sys, psi, report = lower_and_compile(h)
    assert sys.b == (0,) * sys.m
    assert (sys.n, sys.m) == (23, 17)
    with pytest.raises(CompilerError):
        lower_and_compile(h, hnn_target="q")
