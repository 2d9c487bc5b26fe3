import itertools

import pytest

from skeinrep import matrix as mx
from skeinrep.cyclo import cyclo_context
from skeinrep.recoupling import curve_eigenvalue, delta, theta, twist_coeff
from skeinrep.spine import SpecError, SurfaceSpec, caterpillar_tree, dim
from skeinrep.tqft_ops import (
    CurveDesc,
    LoopDesc,
    Operator,
    SpectrumError,
    UnsupportedCurve,
    band_curves,
    band_operator,
    basis,
    basis_norms,
    curve_operator,
    dehn_twist,
    fusion_transport,
    moves_from_caterpillar,
    moves_to_caterpillar,
    pairing,
    point_push,
    push_generators,
    rotate,
    spectral_projections,
)

S4_8 = SurfaceSpec(0, (1, 1, 1, 1), 8)
INSTANCES = [
    SurfaceSpec(0, (1, 1, 1, 1), 8),
    SurfaceSpec(0, (2, 2, 2, 2), 10),
    SurfaceSpec(0, (1, 2, 2, 1), 10),
    SurfaceSpec(0, (2, 2, 1, 1, 2), 10),
    SurfaceSpec(0, (1, 1, 1, 1, 2), 8),
    SurfaceSpec(0, (1, 2, 1, 2, 2), 10),
]


def lam(c, p):
    return curve_eigenvalue(c, p)


def scalar_op(spec, s):
    return Operator.identity(spec).scale(s)


# -- hermitian form ---------------------------------------------------------


def test_norm_examples():
    p = 8
    norms = basis_norms(S4_8).norms
    assert norms[0] == delta(1, p) ** 2
    assert norms[1] == theta(1, 1, 2, p) ** 2 / delta(2, p)
    a, b = basis(S4_8)
    assert not pairing(S4_8, a, b)
    assert not pairing(S4_8, b, a)


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_network_norms_match_closed_form_and_are_orthogonal(spec):
    net = basis_norms(spec, "network").norms
    assert net == basis_norms(spec, "closed").norms
    assert all(net)
    cols = basis(spec)
    for a, b in itertools.permutations(cols, 2):
        assert not pairing(spec, a, b)


def test_norms_genus_one_closed_only():
    spec = SurfaceSpec(1, (1, 1), 8)
    assert len(basis_norms(spec, "closed").norms) == dim(spec)
    with pytest.raises(UnsupportedCurve):
        basis_norms(spec, "network")


# -- edge curves and transport ------------------------------------------------


def test_edge_curve_examples():
    p = 8
    ctx = cyclo_context(p)
    Z = curve_operator(S4_8, "edge:e1")
    assert Z.matrix == mx.diag(ctx, [lam(0, p), lam(2, p)])
    assert lam(0, p) == -ctx.A**2 - ctx.a_power(-2)
    for j in range(1, 5):
        assert curve_operator(S4_8, f"edge:x{j}") == scalar_op(S4_8, lam(1, p))
    with pytest.raises(UnsupportedCurve):
        curve_operator(S4_8, "edge:nope")


def test_eigenvalues_distinct(level):
    vals = [lam(c, level) for c in range(level // 2 - 1)]
    assert len(set(vals)) == len(vals)


def test_transport_trivial_cases():
    ctx = cyclo_context(8)
    F, tree = fusion_transport(S4_8, [])
    assert F == mx.eye(ctx, 2) and tree == caterpillar_tree(3)
    spec = SurfaceSpec(0, (1, 1, 1, 1), 6)
    F, _ = fusion_transport(spec, [((), "L")])
    assert len(F) == 1 and F[0][0]


def test_single_move_and_reverse_are_inverse():
    ctx = cyclo_context(8)
    F, tree = fusion_transport(S4_8, [((), "L")])
    assert tree == (1, (2, 3))
    G, back = fusion_transport(S4_8, [((), "R")], start=tree)
    assert back == caterpillar_tree(3)
    assert mx.matmul(G, F, ctx) == mx.eye(ctx, 2)
    assert mx.matmul(F, G, ctx) == mx.eye(ctx, 2)


def test_moves_round_trip():
    for tree in [(1, (2, 3)), ((1, 2), (3, 4)), (1, (2, (3, 4))), (1, ((2, 3), 4)), ((1, (2, 3)), (4, 5))]:
        t = tree
        for path, d in moves_to_caterpillar(tree):
            t = rotate(t, path, d)
        m = max(x for x in str(tree) if x.isdigit())
        assert t == caterpillar_tree(int(m))
        t = caterpillar_tree(int(m))
        for path, d in moves_from_caterpillar(tree):
            t = rotate(t, path, d)
        assert t == tree


# -- band curves ---------------------------------------------------------------


def test_band_examples():
    p = 8
    assert curve_operator(S4_8, "band:1..4") == scalar_op(S4_8, lam(0, p))
    for j in range(1, 5):
        assert curve_operator(S4_8, CurveDesc.band(j, j)) == scalar_op(S4_8, lam(1, p))
    assert curve_operator(S4_8, "band:1..2") == curve_operator(S4_8, "edge:e1")
    # complement bands: band(3..4) cuts off the same sphere as band(1..2)
    assert curve_operator(S4_8, "band:3..4") == curve_operator(S4_8, "band:1..2")


def test_cable_identities():
    for spec in INSTANCES:
        for curve in ["band:2..3", "band:1..2"]:
            Z = curve_operator(spec, curve)
            assert curve_operator(spec, f"cable:{curve}:0") == Operator.identity(spec)
            assert curve_operator(spec, f"cable:{curve}:1") == Z
            assert curve_operator(spec, f"cable:{curve}:2") == Z @ Z - Operator.identity(spec)


def _disjoint_or_nested(a, b):
    (i, j), (k, l) = a, b
    return j < k or l < i or (i <= k and l <= j) or (k <= i and j <= l)


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_disjoint_and_nested_bands_commute(spec):
    ops = {(c.i, c.j): curve_operator(spec, c) for c in band_curves(spec)}
    for a, b in itertools.combinations(ops, 2):
        if _disjoint_or_nested(a, b):
            assert ops[a] @ ops[b] == ops[b] @ ops[a], (a, b)


def test_crossing_bands_do_not_commute():
    Z1 = curve_operator(S4_8, "band:1..2")
    Z2 = curve_operator(S4_8, "band:2..3")
    assert Z1 @ Z2 != Z2 @ Z1


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_band_operators_self_adjoint(spec):
    ctx = cyclo_context(spec.p)
    N = mx.diag(ctx, basis_norms(spec).norms)
    for c in band_curves(spec):
        M = curve_operator(spec, c).matrix
        lhs = mx.matmul(mx.transpose(mx.conjugate(M)), N, ctx)
        assert lhs == mx.matmul(N, M, ctx), str(c)


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_spectrum_inside_eigenvalue_set(spec):
    p = spec.p
    I = Operator.identity(spec)
    for c in band_curves(spec):
        Z = curve_operator(spec, c)
        prod = I
        for col in range(p // 2 - 1):
            prod = prod @ (Z - I.scale(lam(col, p)))
        assert mx.is_zero(prod.matrix), str(c)


def _trace(op):
    t = op.ctx.zero()
    for i in range(op.dim):
        t = t + op.matrix[i][i]
    return t


def _sphere_dim(points, p):
    from skeinrep.recoupling import admissible

    points = [c for c in points if c]  # a color-0 point erases
    if len(points) <= 1:
        return int(not points)
    if len(points) == 2:
        return int(points[0] == points[1])
    if len(points) == 3:
        return int(admissible(*points, p))
    return dim(SurfaceSpec(0, tuple(points), p))


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_band_trace_matches_splitting_count(spec):
    # cutting along band(i..j) splits the sphere in two; the color-c eigenspace
    # has dimension dim(inside + c) * dim(outside + c)
    p, n, k = spec.p, spec.n, spec.k
    for c in band_curves(spec):
        if (c.i, c.j) == (1, n):
            continue
        inside = list(k[c.i - 1:c.j])
        outside = list(k[:c.i - 1]) + list(k[c.j:])
        expected = cyclo_context(p).zero()
        for col in range(p // 2 - 1):
            expected = expected + lam(col, p) * (_sphere_dim(inside + [col], p) * _sphere_dim(outside + [col], p))
        assert _trace(curve_operator(spec, c)) == expected, str(c)


def test_path_independence_five_points():
    for spec in [SurfaceSpec(0, (2, 2, 1, 1, 2), 10), SurfaceSpec(0, (1, 1, 1, 1, 2), 8), SurfaceSpec(0, (1, 2, 1, 2, 2), 10)]:
        assert band_operator(spec, 2, 3) == band_operator(spec, 2, 3, target=(1, ((2, 3), 4)))
        assert band_operator(spec, 2, 4) == band_operator(spec, 2, 4, target=(1, (2, (3, 4))))
        assert band_operator(spec, 3, 4) == band_operator(spec, 3, 4, target=((1, 2), (3, 4)))
        assert band_operator(spec, 2, 3) == band_operator(spec, 2, 3, target=((1, (2, 3)), 4))


def test_path_independence_six_points():
    spec = SurfaceSpec(0, (1, 1, 1, 1, 1, 1), 8)
    ref = band_operator(spec, 2, 4)
    for t in [(1, (((2, 3), 4), 5)), ((1, ((2, 3), 4)), 5), ((1, (2, (3, 4))), 5), (1, ((2, (3, 4)), 5))]:
        assert band_operator(spec, 2, 4, target=t) == ref


def test_band_target_must_contain_band():
    spec = SurfaceSpec(0, (2, 2, 1, 1, 2), 10)
    with pytest.raises(ValueError):
        band_operator(spec, 2, 3, target=((1, 2), (3, 4)))


def test_bad_curves():
    with pytest.raises(UnsupportedCurve):
        curve_operator(S4_8, "band:0..2")
    with pytest.raises(ValueError):
        CurveDesc.parse("loop:1")
    with pytest.raises(UnsupportedCurve):
        curve_operator(SurfaceSpec(1, (1, 1), 8), "band:1..2")
    for text in ["band:2..3", "edge:e1", "cable:band:1..3:2"]:
        assert str(CurveDesc.parse(text)) == text


# -- twists and pushes ----------------------------------------------------------


def test_twist_examples():
    p = 8
    ctx = cyclo_context(p)
    for j in range(1, 5):
        assert dehn_twist(S4_8, CurveDesc.band(j, j)) == scalar_op(S4_8, twist_coeff(1, p))
    T = dehn_twist(S4_8, "edge:e1")
    assert T.matrix == mx.diag(ctx, [ctx.one(), ctx.a_power(8)])
    assert T.matrix == mx.diag(ctx, [twist_coeff(0, p), twist_coeff(2, p)])


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_twist_inverse_and_commutation(spec):
    I = Operator.identity(spec)
    for c in band_curves(spec):
        T = dehn_twist(spec, c)
        assert T @ dehn_twist(spec, c, inverse=True) == I
        Z = curve_operator(spec, c)
        assert T @ Z == Z @ T


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_spectral_projections_resolve_identity(spec):
    for c in band_curves(spec):
        proj = spectral_projections(curve_operator(spec, c))
        total = None
        for P in proj.values():
            assert P @ P == P
            total = P if total is None else total + P
        assert total == Operator.identity(spec)


def test_spectrum_error():
    ctx = cyclo_context(8)
    bogus = Operator(S4_8, mx.diag(ctx, [ctx.scalar(5), ctx.scalar(7)]))
    with pytest.raises(SpectrumError):
        spectral_projections(bogus)


def test_cable_twist_rejected():
    with pytest.raises(UnsupportedCurve):
        dehn_twist(S4_8, "cable:band:1..2:2")


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_first_push_is_band_twist(spec):
    p = spec.p
    mu = twist_coeff(spec.k[1], p)
    assert point_push(spec, 2) == dehn_twist(spec, "band:1..2").scale(mu.inverse())
    assert point_push(spec, LoopDesc(2)) == point_push(spec, 2)


@pytest.mark.parametrize("spec", INSTANCES, ids=str)
def test_push_generators_preserve_form(spec):
    # twists are unitary for the hermitian form, so pushes are too
    ctx = cyclo_context(spec.p)
    N = mx.diag(ctx, basis_norms(spec).norms)
    for P in push_generators(spec):
        M = P.matrix
        assert mx.matmul(mx.transpose(mx.conjugate(M)), mx.matmul(N, M, ctx), ctx) == N


def test_push_dimension_one_is_scalar():
    spec = SurfaceSpec(0, (1, 1, 1, 1), 6)
    assert point_push(spec, 2).is_scalar()
    assert point_push(spec, 3).is_scalar()


def test_push_errors():
    with pytest.raises(ValueError):
        point_push(S4_8, 1)
    with pytest.raises(ValueError):
        point_push(S4_8, 4)
    with pytest.raises(UnsupportedCurve):
        point_push(SurfaceSpec(1, (1, 1), 8), 2)
    with pytest.raises(SpecError):
        point_push(SurfaceSpec.unstable(0, (1, 1, 1), 8), 2)


def test_operator_json():
    T = dehn_twist(S4_8, "band:2..3")
    data = T.to_json()
    assert Operator(S4_8, mx.from_json(data)) == T
