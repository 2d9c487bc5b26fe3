import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinrep import matrix as mx
from skeinrep.cyclo import cyclo_context
from skeinrep.repalg import (
    MixedSpecs,
    ZeroSpace,
    analyze,
    commutant_basis,
    commutant_dim,
    contains,
    generators_for,
    saturate,
)
from skeinrep.spine import SurfaceSpec
from skeinrep.tqft_ops import Operator, band_curves, curve_operator, push_generators

S4_8 = SurfaceSpec(0, (1, 1, 1, 1), 8)
S5_10 = SurfaceSpec(0, (2, 2, 1, 1, 2), 10)


def unit(spec, i, j):
    ctx = cyclo_context(spec.p)
    m = mx.zeros(ctx, 2, 2)
    m[i][j] = ctx.one()
    return Operator(spec, m)


def test_saturate_examples():
    assert saturate([], S4_8).dim == 1
    units = [unit(S4_8, 0, 0), unit(S4_8, 0, 1), unit(S4_8, 1, 0)]
    assert saturate(units).dim == 4
    spec = SurfaceSpec(0, (2, 2, 2, 2), 10)
    assert saturate([curve_operator(spec, c) for c in band_curves(spec)]).dim == 4


def test_saturate_mixed_specs():
    other = SurfaceSpec(0, (1, 1, 1, 1), 10)
    with pytest.raises(MixedSpecs):
        saturate([Operator.identity(S4_8), Operator.identity(other)])
    with pytest.raises(ValueError):
        saturate([])


def test_commutant_examples():
    assert commutant_dim([Operator.identity(S4_8)]) == 4
    assert commutant_dim([curve_operator(S4_8, "edge:e1")]) == 2
    assert commutant_dim(push_generators(S4_8)) == 1


def test_contains_examples():
    diag = saturate([curve_operator(S4_8, "edge:e1")])
    assert diag.dim == 2
    assert contains(Operator.identity(S4_8), diag)
    assert not contains(unit(S4_8, 0, 1), diag)
    pushes = saturate(push_generators(S4_8))
    assert contains(curve_operator(S4_8, "band:2..3"), pushes)


def test_echelon_basis_is_reduced():
    alg = saturate(generators_for(S5_10, "curves"))
    for r, pc in zip(alg.rows, alg.pivots):
        assert r[pc] == cyclo_context(10).one()
        for other, _ in zip(alg.rows, alg.pivots):
            if other is not r:
                assert not other[pc]
    assert alg.pivots == sorted(alg.pivots)


def test_analyze_examples():
    r = analyze(S4_8, "point-pushing")
    assert (r.algebra_dim, r.commutant_dim, r.verdict) == (4, 1, "irreducible")
    r = analyze(SurfaceSpec(0, (2, 2, 2, 2), 10), "curves")
    assert (r.algebra_dim, r.commutant_dim, r.verdict) == (4, 1, "irreducible")


def test_analyze_methods_agree():
    for method in ("both", "saturation", "commutant"):
        r = analyze(S5_10, "both", method)
        assert r.commutant_dim == 1
    assert analyze(S5_10, "curves", "commutant").algebra_dim is None
    with pytest.raises(ValueError):
        analyze(S5_10, "curves", "guess")
    with pytest.raises(ValueError):
        generators_for(S5_10, "all")


def test_reducible_report_carries_certificate():
    gens = [curve_operator(S4_8, "edge:e1")]
    cert = commutant_basis(gens)
    assert len(cert) == 2
    for X in cert:
        for g in gens:
            assert X @ g == g @ X


def test_zero_space():
    with pytest.raises(ZeroSpace):
        analyze(SurfaceSpec(0, (1, 1, 1, 1, 1), 8))


def test_report_json():
    r = analyze(S4_8, "point-pushing")
    data = r.to_json(certificate=True)
    assert data["certificate"] == []
    assert json.loads(json.dumps(data)) == data
    assert "certificate" not in r.to_json()


SPECS = [S4_8, S5_10, SurfaceSpec(0, (1, 2, 1, 2, 2), 10), SurfaceSpec(0, (2, 2, 2, 2), 10)]


def _pool(spec):
    return push_generators(spec) + [curve_operator(spec, c) for c in band_curves(spec)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(range(len(SPECS))), st.data())
def test_scalar_robustness(idx, data):
    spec = SPECS[idx]
    pool = _pool(spec)
    chosen = data.draw(st.lists(st.sampled_from(range(len(pool))), min_size=1, max_size=4, unique=True))
    gens = [pool[i] for i in chosen]
    ctx = cyclo_context(spec.p)
    k = data.draw(st.integers(-2 * spec.p, 2 * spec.p))
    q = data.draw(st.integers(1, 5))
    scaled = [g.scale(ctx.a_power(k) * q) for g in gens]
    assert saturate(scaled).dim == saturate(gens).dim
    assert commutant_dim(scaled) == commutant_dim(gens)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(range(len(SPECS))), st.data())
def test_monotonicity_and_cross_check(idx, data):
    spec = SPECS[idx]
    pool = _pool(spec)
    order = data.draw(st.permutations(range(len(pool))))
    prev_alg, prev_comm = 1, None
    d = len(pool[0].matrix)
    for m in range(1, min(len(order), 5) + 1):
        gens = [pool[i] for i in order[:m]]
        a, c = saturate(gens).dim, commutant_dim(gens)
        assert a >= prev_alg
        assert prev_comm is None or c <= prev_comm
        assert (a == d * d) == (c == 1)
        # the commutant of the generators equals the commutant of the whole algebra
        assert commutant_dim(saturate(gens).operators()) == c
        prev_alg, prev_comm = a, c


def test_thread_count_does_not_change_basis():
    gens = generators_for(S5_10, "both")
    a = saturate(gens, threads=1)
    b = saturate(gens, threads=4)
    assert a.rows == b.rows and a.pivots == b.pivots and a.rounds == b.rounds
