"""Operators on V_p(S, k): curve operators, fusion transport, Dehn twists, point pushes.

Matrices act on coordinate columns in the caterpillar basis returned by
:func:`basis` (the order of :func:`skeinrep.spine.enumerate_colorings`).
Band curves ``band(i..j)`` enclose the consecutive points ``x_i .. x_j``; a band
that is not an edge of the caterpillar is diagonalized by moving to a tree
that contains it as a subtree (6j transport) and conjugating back.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Sequence

from . import matrix as mx
from .cyclo import CycloNum, cyclo_context
from .recoupling import curve_eigenvalue, delta, sixj, theta, twist_coeff
from .spine import (
    Coloring,
    SpecError,
    SurfaceSpec,
    Tree,
    _leg_key,
    build_spine,
    caterpillar_tree,
    enumerate_colorings,
    internal_nodes,
    interval,
    leaves,
    node_at,
    replace_at,
    tree_spine,
)
from .tldiag import Cap, ColoredNetwork, Cup, Id, Merge, Split, evaluate_network


class SpectrumError(RuntimeError):
    """A curve operator whose spectrum leaves {lambda_c}: an upstream integrity failure."""


class UnsupportedCurve(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Operator:
    spec: SurfaceSpec
    matrix: mx.Matrix

    @property
    def ctx(self):
        return cyclo_context(self.spec.p)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def _check(self, other: "Operator") -> None:
        if other.spec != self.spec:
            raise ValueError("operators belong to different surface specs")

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.spec, mx.matmul(self.matrix, other.matrix, self.ctx))

    def __add__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.spec, mx.add(self.matrix, other.matrix))

    def __sub__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.spec, mx.sub(self.matrix, other.matrix))

    def scale(self, s) -> "Operator":
        return Operator(self.spec, mx.scale(self.matrix, s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return self.spec == other.spec and self.matrix == other.matrix

    def inverse(self) -> "Operator":
        return Operator(self.spec, mx.inverse(self.matrix, self.ctx))

    def is_scalar(self) -> bool:
        d = self.dim
        if d == 0:
            return True
        s = self.matrix[0][0]
        return all(self.matrix[i][j] == (s if i == j else 0) for i in range(d) for j in range(d))

    def to_json(self) -> list:
        return mx.to_json(self.matrix)

    @classmethod
    def identity(cls, spec: SurfaceSpec) -> "Operator":
        return cls(spec, mx.eye(cyclo_context(spec.p), dim_of(spec)))


@functools.lru_cache(maxsize=None)
def basis(spec: SurfaceSpec) -> tuple[Coloring, ...]:
    return tuple(enumerate_colorings(build_spine(spec)))


def dim_of(spec: SurfaceSpec) -> int:
    return len(basis(spec))


def _require_genus0(spec: SurfaceSpec, what: str) -> None:
    if spec.g != 0:
        raise UnsupportedCurve(f"{what} is only available in genus 0")


# -- hermitian form -----------------------------------------------------------


@dataclass(frozen=True)
class HermitianData:
    spec: SurfaceSpec
    norms: tuple[CycloNum, ...]

    def form(self, u: Sequence[CycloNum], v: Sequence[CycloNum]) -> CycloNum:
        ctx = cyclo_context(self.spec.p)
        total = ctx.zero()
        for a, n, b in zip(u, self.norms, v):
            total = total + a.conjugate() * n * b
        return total

    def to_json(self) -> dict:
        return {
            "spec": {"genus": self.spec.g, "points": list(self.spec.k), "level": self.spec.p},
            "norms": [x.to_json() for x in self.norms],
        }


def _split_layers(spec: SurfaceSpec, tree: Tree, col) -> list[list]:
    """Layers building the colored tree as a morphism 0 -> (k_1, ..., k_n)."""
    n = spec.n
    kn = spec.k[-1]
    row: list = [(tree, kn), (n, kn)]
    layers: list[list] = [[Cup(kn)]]
    while True:
        idx = next((t for t, (node, _) in enumerate(row) if not isinstance(node, int)), None)
        if idx is None:
            return layers
        node, c = row[idx]
        left, right = node
        a, b = col(interval(left)), col(interval(right))
        layer = [Id(cc) for _, cc in row[:idx]] + [Split(c, a, b)] + [Id(cc) for _, cc in row[idx + 1:]]
        layers.append(layer)
        row[idx:idx + 1] = [(left, a), (right, b)]


def double_network(spec: SurfaceSpec, tree: Tree, lower: Coloring, upper: Coloring) -> ColoredNetwork:
    """The tree colored by ``lower`` glued along its legs to the mirror of the tree colored by ``upper``."""

    def colfn(coloring):
        return lambda iv: coloring.color(_leg_key(spec, iv))

    low = _split_layers(spec, tree, colfn(lower))
    up = _split_layers(spec, tree, colfn(upper))
    mirrored = []
    for layer in reversed(up[1:]):
        mirrored.append([Merge(pc.a, pc.b, pc.c) if isinstance(pc, Split) else pc for pc in layer])
    kn = spec.k[-1]
    return ColoredNetwork.from_layers(low + mirrored + [[Cap(kn)]])


def norm_closed_form(coloring: Coloring) -> CycloNum:
    """prod over vertices theta / prod over internal edges Delta."""
    spine = coloring.spine
    p = spine.spec.p
    ctx = cyclo_context(p)
    num = ctx.one()
    for t in coloring.triples():
        num = num * theta(*t, p)
    den = ctx.one()
    for c in coloring.colors:
        den = den * delta(c, p)
    return num / den


def pairing(spec: SurfaceSpec, a: Coloring, b: Coloring) -> CycloNum:
    """Bracket of the doubled network pairing two caterpillar basis vectors."""
    _require_genus0(spec, "doubled-network pairing")
    tree = caterpillar_tree(spec.n - 1)
    return evaluate_network(double_network(spec, tree, a, b), spec.p)


def basis_norms(spec: SurfaceSpec, method: str = "network") -> HermitianData:
    """Norms <G^c, G^c> of the caterpillar basis.

    ``method="network"`` evaluates the doubled spine with the diagram engine
    (genus 0 only); ``"closed"`` uses theta/Delta products and also covers
    genus >= 1.
    """
    cols = basis(spec)
    if method == "network":
        norms = tuple(pairing(spec, c, c) for c in cols)
    elif method == "closed":
        norms = tuple(norm_closed_form(c) for c in cols)
    else:
        raise ValueError(f"unknown method {method!r}")
    return HermitianData(spec, norms)


# -- fusion transport -----------------------------------------------------------


Move = tuple[tuple[int, ...], str]


def rotate(tree: Tree, path: tuple[int, ...], direction: str) -> Tree:
    """'L': ((X,Y),Z) -> (X,(Y,Z)); 'R': (X,(Y,Z)) -> ((X,Y),Z), at the node under ``path``."""
    node = node_at(tree, path)
    if isinstance(node, int):
        raise ValueError("cannot rotate at a leaf")
    if direction == "L":
        if isinstance(node[0], int):
            raise ValueError(f"no left rotation at {path}")
        (x, y), z = node
        new = (x, (y, z))
    elif direction == "R":
        if isinstance(node[1], int):
            raise ValueError(f"no right rotation at {path}")
        x, (y, z) = node
        new = ((x, y), z)
    else:
        raise ValueError(f"direction must be 'L' or 'R', got {direction!r}")
    return replace_at(tree, path, new)


def moves_to_caterpillar(tree: Tree) -> list[Move]:
    moves: list[Move] = []

    def walk(t: Tree, path: tuple[int, ...]) -> Tree:
        node = node_at(t, path)
        while not isinstance(node, int) and not isinstance(node[1], int):
            moves.append((path, "R"))
            t = rotate(t, path, "R")
            node = node_at(t, path)
        if isinstance(node, int):
            return t
        return walk(t, path + (0,))

    walk(tree, ())
    return moves


def moves_from_caterpillar(target: Tree) -> list[Move]:
    return [(path, "L" if d == "R" else "R") for path, d in reversed(moves_to_caterpillar(target))]


@functools.lru_cache(maxsize=None)
def tree_basis(spec: SurfaceSpec, tree: Tree) -> tuple[Coloring, ...]:
    return tuple(enumerate_colorings(tree_spine(spec, tree)))


def _iv_colors(spec: SurfaceSpec, c: Coloring) -> dict:
    return {e: col for e, col in zip(c.spine.edges, c.colors)}


def _move_matrix(spec: SurfaceSpec, tree: Tree, move: Move) -> tuple[mx.Matrix, Tree]:
    path, direction = move
    new_tree = rotate(tree, path, direction)
    old_b, new_b = tree_basis(spec, tree), tree_basis(spec, new_tree)
    node = node_at(tree, path)
    if direction == "L":
        (X, Y), Z = node
    else:
        X, (Y, Z) = node
    ivX, ivY, ivZ, ivN = interval(X), interval(Y), interval(Z), interval(node)
    ivXY, ivYZ = (ivX[0], ivY[1]), (ivY[0], ivZ[1])
    old_edge, new_edge = (ivXY, ivYZ) if direction == "L" else (ivYZ, ivXY)
    index: dict = {}
    for j, c in enumerate(new_b):
        rest = {k: v for k, v in _iv_colors(spec, c).items() if k != new_edge}
        index.setdefault(tuple(sorted(rest.items())), []).append((j, c))
    ctx = cyclo_context(spec.p)
    p = spec.p
    F = mx.zeros(ctx, len(new_b), len(old_b))
    for i, c in enumerate(old_b):
        col = lambda iv, c=c: c.color(_leg_key(spec, iv))  # noqa: E731
        x, y, z, r = col(ivX), col(ivY), col(ivZ), col(ivN)
        olde = col(old_edge)
        rest = {k: v for k, v in _iv_colors(spec, c).items() if k != old_edge}
        for j, cn in index.get(tuple(sorted(rest.items())), []):
            newe = cn.color(_leg_key(spec, new_edge))
            if direction == "L":
                F[j][i] = sixj(x, y, olde, r, z, newe, p)
            else:
                F[j][i] = sixj(y, z, olde, x, r, newe, p)
    return F, new_tree


def fusion_transport(spec: SurfaceSpec, moves: Sequence[Move], start: Tree | None = None) -> tuple[mx.Matrix, Tree]:
    """Change of basis along tree rotations.

    Returns ``(F, final_tree)``; column ``i`` of ``F`` expands the ``i``-th
    basis vector of the start tree (the caterpillar by default) in the basis
    of ``final_tree``.
    """
    _require_genus0(spec, "fusion transport")
    ctx = cyclo_context(spec.p)
    tree = start if start is not None else caterpillar_tree(spec.n - 1)
    F = mx.eye(ctx, len(tree_basis(spec, tree)))
    for move in moves:
        M, tree = _move_matrix(spec, tree, move)
        F = mx.matmul(M, F, ctx)
    return F, tree


# -- curves ---------------------------------------------------------------------


@dataclass(frozen=True)
class CurveDesc:
    kind: str  # "edge" | "band" | "cable"
    edge: str | None = None
    i: int = 0
    j: int = 0
    color: int = 0
    inner: "CurveDesc | None" = None

    @classmethod
    def band(cls, i: int, j: int) -> "CurveDesc":
        return cls("band", i=i, j=j)

    @classmethod
    def edge_curve(cls, name: str) -> "CurveDesc":
        return cls("edge", edge=name)

    @classmethod
    def cable(cls, inner: "CurveDesc", c: int) -> "CurveDesc":
        return cls("cable", inner=inner, color=c)

    @classmethod
    def parse(cls, text: str) -> "CurveDesc":
        m = re.fullmatch(r"band:(\d+)\.\.(\d+)", text)
        if m:
            return cls.band(int(m[1]), int(m[2]))
        m = re.fullmatch(r"edge:(\S+)", text)
        if m:
            return cls.edge_curve(m[1])
        m = re.fullmatch(r"cable:(.+):(\d+)", text)
        if m:
            return cls.cable(cls.parse(m[1]), int(m[2]))
        raise ValueError(f"cannot parse curve {text!r}")

    def __str__(self) -> str:
        if self.kind == "band":
            return f"band:{self.i}..{self.j}"
        if self.kind == "edge":
            return f"edge:{self.edge}"
        return f"cable:{self.inner}:{self.color}"


@dataclass(frozen=True)
class LoopDesc:
    """Point-pushing generator: x_1 pushed around the band {x_2, ..., x_j}."""

    j: int


def edge_curve_operator(spec: SurfaceSpec, edge: str) -> Operator:
    spine = build_spine(spec)
    try:
        key = spine.key_for(edge)
    except KeyError:
        raise UnsupportedCurve(f"unknown edge {edge!r}") from None
    ctx = cyclo_context(spec.p)
    vals = [curve_eigenvalue(c.color(key), spec.p) for c in basis(spec)]
    return Operator(spec, mx.diag(ctx, vals))


def band_target_tree(n: int, i: int, j: int) -> Tree:
    """A tree on 1..n-1 containing the subtree over i..j (2 <= i < j <= n-1)."""
    t: Tree = caterpillar_tree(i - 1)
    t = (t, caterpillar_tree(j - i + 1, start=i))
    for m in range(j + 1, n):
        t = (t, m)
    return t


def _band_normal(spec: SurfaceSpec, i: int, j: int) -> tuple[int, int] | None:
    n = spec.n
    if not 1 <= i <= j <= n:
        raise UnsupportedCurve(f"band({i}..{j}) needs 1 <= i <= j <= {n}")
    if (i, j) == (1, n):
        return None
    if j == n:
        return (1, i - 1)
    return (i, j)


def band_colors(spec: SurfaceSpec, i: int, j: int, target: Tree | None = None):
    """(F, colors): transport to a tree where band(i..j) is an edge, and that edge's colors."""
    iv = _band_normal(spec, i, j)
    n = spec.n
    if iv is None:
        raise ValueError("band(1..n) bounds a disk")
    a, b = iv
    if target is None:
        if a == b or a == 1:
            target = caterpillar_tree(n - 1)
        else:
            target = band_target_tree(n, a, b)
    if a != b and iv not in interval_nodes(target):
        raise ValueError(f"tree {target!r} has no subtree over {a}..{b}")
    moves = moves_from_caterpillar(target)
    F, final = fusion_transport(spec, moves)
    assert final == target
    key = _leg_key(spec, iv)
    colors = [c.color(key) for c in tree_basis(spec, target)]
    return F, colors


def interval_nodes(tree: Tree) -> set:
    return {interval(t) for t in internal_nodes(tree)}


def band_operator(spec: SurfaceSpec, i: int, j: int, target: Tree | None = None) -> Operator:
    _require_genus0(spec, "band curve operators")
    ctx = cyclo_context(spec.p)
    if _band_normal(spec, i, j) is None:
        return Operator.identity(spec).scale(curve_eigenvalue(0, spec.p))
    F, colors = band_colors(spec, i, j, target)
    D = mx.diag(ctx, [curve_eigenvalue(c, spec.p) for c in colors])
    if F == mx.eye(ctx, len(F)):
        return Operator(spec, D)
    return Operator(spec, mx.matmul(mx.inverse(F, ctx), mx.matmul(D, F, ctx), ctx))


def chebyshev(Z: Operator, c: int) -> Operator:
    """S_c(Z): S_0 = id, S_1 = Z, S_{m+1} = Z S_m - S_{m-1}."""
    if c < 0:
        raise ValueError("cable color must be >= 0")
    prev, cur = Operator.identity(Z.spec), Z
    if c == 0:
        return prev
    for _ in range(c - 1):
        prev, cur = cur, (Z @ cur) - prev
    return cur


def curve_operator(spec: SurfaceSpec, curve: CurveDesc | str) -> Operator:
    if isinstance(curve, str):
        curve = CurveDesc.parse(curve)
    if curve.kind == "edge":
        return edge_curve_operator(spec, curve.edge)
    if curve.kind == "band":
        return band_operator(spec, curve.i, curve.j)
    if curve.kind == "cable":
        return chebyshev(curve_operator(spec, curve.inner), curve.color)
    raise UnsupportedCurve(f"unknown curve kind {curve.kind!r}")


# -- twists and pushes -------------------------------------------------------------


def spectral_projections(Z: Operator) -> dict[int, Operator]:
    """Pi_c = prod_{c' != c} (Z - lambda_{c'}) / (lambda_c - lambda_{c'}), for colors 0..p/2-2.

    Raises SpectrumError unless prod_c (Z - lambda_c) vanishes, i.e. Z is
    diagonalizable with spectrum inside {lambda_c}.
    """
    spec = Z.spec
    p = spec.p
    colors = range(p // 2 - 1)
    lam = {c: curve_eigenvalue(c, p) for c in colors}
    I = Operator.identity(spec)
    shifted = {c: Z - I.scale(lam[c]) for c in colors}
    prod = I
    for c in colors:
        prod = prod @ shifted[c]
    if not mx.is_zero(prod.matrix):
        raise SpectrumError("curve operator spectrum is not contained in {lambda_c}")
    out = {}
    for c in colors:
        P = I
        denom = cyclo_context(p).one()
        for c2 in colors:
            if c2 != c:
                P = P @ shifted[c2]
                denom = denom * (lam[c] - lam[c2])
        P = P.scale(denom.inverse())
        if not mx.is_zero(P.matrix):
            out[c] = P
    return out


def _twist_from_projections(proj: dict[int, Operator], spec: SurfaceSpec, inverse: bool) -> Operator:
    ctx = cyclo_context(spec.p)
    T = Operator(spec, mx.zeros(ctx, dim_of(spec), dim_of(spec)))
    for c, P in proj.items():
        mu = twist_coeff(c, spec.p)
        T = T + P.scale(mu.inverse() if inverse else mu)
    return T


def dehn_twist(spec: SurfaceSpec, curve: CurveDesc | str, inverse: bool = False) -> Operator:
    """T = sum_c mu_c Pi_c over the eigen-decomposition of the curve operator."""
    if isinstance(curve, str):
        curve = CurveDesc.parse(curve)
    if curve.kind == "cable":
        raise UnsupportedCurve("twists are defined for simple curves, not cables")
    Z = curve_operator(spec, curve)
    return _twist_from_projections(spectral_projections(Z), spec, inverse)


def point_push(spec: SurfaceSpec, loop: LoopDesc | int) -> Operator:
    """Push(delta_j) = T_{band(1..j)} T_{band(2..j)}^{-1}."""
    j = loop.j if isinstance(loop, LoopDesc) else int(loop)
    _require_genus0(spec, "point pushing")
    n = spec.n
    if n < 4:
        raise SpecError("point pushing generators need n >= 4")
    if not 2 <= j <= n - 1:
        raise ValueError(f"push generator index j must lie in 2..{n - 1}, got {j}")
    left = dehn_twist(spec, CurveDesc.band(1, j))
    right_inv = dehn_twist(spec, CurveDesc.band(2, j), inverse=True)
    return left @ right_inv


def push_generators(spec: SurfaceSpec) -> list[Operator]:
    return [point_push(spec, j) for j in range(2, spec.n)]


def band_curves(spec: SurfaceSpec) -> list[CurveDesc]:
    n = spec.n
    return [CurveDesc.band(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def curve_generators(spec: SurfaceSpec) -> list[Operator]:
    return [curve_operator(spec, c) for c in band_curves(spec)]
