"""Surface specs, trivalent spines and the p-admissible coloring basis.

Genus-0 spines are planar binary trees over the leaves ``1 .. n-1``; the root
edge of the tree is the leg of ``x_n``.  A tree is either a leaf (an ``int``)
or a pair ``(left, right)``.  Every edge of a genus-0 tree is named by the
interval of points it cuts off: leg ``j`` is ``(j, j)``, the root is
``(1, n-1)`` and carries the color ``k_n``.

Higher genus uses one fixed caterpillar: legs fused left to right along a
backbone, then ``g - 1`` lollipops (stick ``b_i`` ending in loop ``a_i``) and a
final loop closing the backbone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Union

from .recoupling import admissible

Tree = Union[int, tuple]


class SpecError(ValueError):
    """A surface spec violating one of the standing constraints."""


@dataclass(frozen=True)
class SurfaceSpec:
    g: int
    k: tuple[int, ...]
    p: int
    stable: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(self.k))
        n = len(self.k)
        if self.g < 0:
            raise SpecError("genus must be >= 0")
        if n < 1:
            raise SpecError("n >= 1 banded points required")
        if self.stable and 2 * self.g + n < 4:
            raise SpecError(f"2g+n >= 4 violated (g={self.g}, n={n})")
        if any(c <= 0 for c in self.k):
            raise SpecError("colors of banded points must be positive integers")
        if self.p < 6 or self.p % 2:
            raise SpecError(f"level p must be even and >= 6, got {self.p}")
        if self.p < max(self.k) + 4:
            raise SpecError(f"p >= max k_j + 4 violated (p={self.p}, max k={max(self.k)})")

    @classmethod
    def unstable(cls, g: int, k, p: int) -> "SurfaceSpec":
        """Skip the 2g+n >= 4 requirement (small surfaces, basis counts only)."""
        return cls(g, tuple(k), p, stable=False)

    @property
    def n(self) -> int:
        return len(self.k)

    def describe(self) -> str:
        return f"(g={self.g}, k={','.join(map(str, self.k))}, p={self.p})"


# -- genus-0 trees -------------------------------------------------------


def caterpillar_tree(m: int, start: int = 1) -> Tree:
    """(((start, start+1), start+2), ..., start+m-1)."""
    t: Tree = start
    for j in range(start + 1, start + m):
        t = (t, j)
    return t


def balanced_tree(lo: int, hi: int) -> Tree:
    if lo == hi:
        return lo
    mid = (lo + hi) // 2
    return (balanced_tree(lo, mid), balanced_tree(mid + 1, hi))


def right_comb_tree(lo: int, hi: int) -> Tree:
    if lo == hi:
        return lo
    return (lo, right_comb_tree(lo + 1, hi))


def leaves(t: Tree) -> list[int]:
    return [t] if isinstance(t, int) else leaves(t[0]) + leaves(t[1])


def interval(t: Tree) -> tuple[int, int]:
    ls = leaves(t)
    return (ls[0], ls[-1])


def internal_nodes(t: Tree) -> list[Tree]:
    """Internal nodes in postorder (root last)."""
    if isinstance(t, int):
        return []
    return internal_nodes(t[0]) + internal_nodes(t[1]) + [t]


def node_at(t: Tree, path: tuple[int, ...]) -> Tree:
    for step in path:
        t = t[step]
    return t


def replace_at(t: Tree, path: tuple[int, ...], new: Tree) -> Tree:
    if not path:
        return new
    kids = list(t)
    kids[path[0]] = replace_at(t[path[0]], path[1:], new)
    return tuple(kids)


def all_trees(lo: int, hi: int) -> Iterator[Tree]:
    """Every planar binary tree on leaves lo..hi."""
    if lo == hi:
        yield lo
        return
    for mid in range(lo, hi):
        for left in all_trees(lo, mid):
            for right in all_trees(mid + 1, hi):
                yield (left, right)


def _shape_tree(shape, n: int) -> Tree:
    if not isinstance(shape, str):
        t = shape
        if sorted(leaves(t)) != list(range(1, n)) or leaves(t) != list(range(1, n)):
            raise SpecError(f"tree {shape!r} must have leaves 1..{n - 1} in order")
        return t
    if shape == "caterpillar":
        return caterpillar_tree(n - 1)
    if shape == "balanced":
        return balanced_tree(1, n - 1)
    if shape == "right-comb":
        return right_comb_tree(1, n - 1)
    raise SpecError(f"unknown shape {shape!r}")


# -- spines ----------------------------------------------------------------


@dataclass(frozen=True)
class Spine:
    """Trivalent graph with legs x1..xn and g handles.

    ``edges`` lists the internal edges in canonical order; ``vertices`` lists
    each trivalent vertex as a triple of edge keys (legs are ``("x", j)``).
    """

    spec: SurfaceSpec
    edges: tuple
    vertices: tuple
    tree: Tree | None = None
    shape: str = "caterpillar"
    names: dict = field(default_factory=dict, compare=False, hash=False)

    def leg_color(self, key) -> int | None:
        if isinstance(key, tuple) and key[0] == "x":
            return self.spec.k[key[1] - 1]
        return None

    def name(self, key) -> str:
        return self.names.get(key, str(key))

    def key_for(self, name: str):
        for key, nm in self.names.items():
            if nm == name:
                return key
        raise KeyError(f"unknown edge {name!r}")


def _leg_key(spec: SurfaceSpec, iv: tuple[int, int]):
    n = spec.n
    if iv[0] == iv[1]:
        return ("x", iv[0])
    if iv == (1, n - 1):
        return ("x", n)
    return iv


def tree_spine(spec: SurfaceSpec, tree: Tree, shape: str = "custom") -> Spine:
    if spec.g != 0:
        raise SpecError("tree spines are genus 0")
    edges = []
    verts = []
    for node in internal_nodes(tree):
        l, r = node
        keys = (_leg_key(spec, interval(l)), _leg_key(spec, interval(r)), _leg_key(spec, interval(node)))
        verts.append(keys)
        if node is not tree:
            edges.append(interval(node))
    names = {("x", j): f"x{j}" for j in range(1, spec.n + 1)}
    cat = shape == "caterpillar"
    for idx, e in enumerate(edges, 1):
        names[e] = f"e{idx}" if cat else f"e{e[0]}-{e[1]}"
    return Spine(spec, tuple(edges), tuple(verts), tree, shape, names)


def _higher_genus_spine(spec: SurfaceSpec) -> Spine:
    n, g = spec.n, spec.g
    names = {("x", j): f"x{j}" for j in range(1, n + 1)}
    edges: list = []
    verts: list = []

    def new(name: str):
        key = (name,)
        names[key] = name
        edges.append(key)
        return key

    back = ("x", 1)
    for j in range(2, n + 1):
        e = new(f"e{j - 1}")
        verts.append((back, ("x", j), e))
        back = e
    for i in range(1, g):
        b = new(f"b{i}")
        a = new(f"a{i}")
        d = new(f"d{i}")
        verts.append((back, b, d))
        verts.append((b, a, a))
        back = d
    a = new(f"a{g}")
    verts.append((back, a, a))
    return Spine(spec, tuple(edges), tuple(verts), None, "caterpillar", names)


def build_spine(spec: SurfaceSpec, shape="caterpillar") -> Spine:
    """Spine for ``spec``; genus-0 shapes: caterpillar, balanced, right-comb or an explicit tree."""
    if spec.g == 0:
        tree = _shape_tree(shape, spec.n)
        tag = shape if isinstance(shape, str) else "custom"
        if tag != "caterpillar" and tree == caterpillar_tree(spec.n - 1):
            tag = "caterpillar"
        return tree_spine(spec, tree, tag)
    if shape != "caterpillar":
        raise SpecError("only the caterpillar spine exists for genus >= 1")
    return _higher_genus_spine(spec)


# -- colorings -------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    spine: Spine
    colors: tuple[int, ...]

    def color(self, key) -> int:
        leg = self.spine.leg_color(key)
        if leg is not None:
            return leg
        return self.colors[self.spine.edges.index(key)]

    def as_dict(self) -> dict[str, int]:
        return {self.spine.name(e): c for e, c in zip(self.spine.edges, self.colors)}

    def triples(self) -> list[tuple[int, int, int]]:
        return [tuple(self.color(k) for k in v) for v in self.spine.vertices]


def is_admissible(spine: Spine, colors: tuple[int, ...]) -> bool:
    return all(admissible(*t, spine.spec.p) for t in Coloring(spine, colors).triples())


def enumerate_colorings(spine: Spine, spec: SurfaceSpec | None = None) -> list[Coloring]:
    """All p-admissible colorings, lexicographic in the internal-edge colors."""
    if spec is not None and spec != spine.spec:
        raise SpecError("spine was built for a different spec")
    p = spine.spec.p
    top = p // 2 - 2
    out = []
    for colors in itertools.product(range(top + 1), repeat=len(spine.edges)):
        if is_admissible(spine, colors):
            out.append(Coloring(spine, colors))
    return out


def dim(spec: SurfaceSpec, shape="caterpillar") -> int:
    return len(enumerate_colorings(build_spine(spec, shape)))
