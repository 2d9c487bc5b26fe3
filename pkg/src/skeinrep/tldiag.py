"""Planar Temperley-Lieb diagrams, Jones-Wenzl idempotents, network evaluation.

A diagram of type (m -> n) has ``m`` bottom points and ``n`` top points.  Bottom
points are numbered ``0..m-1`` left to right and top points ``m..m+n-1`` left to
right; ``pairing[i]`` is the partner of point ``i``.  Loops produced by
stacking are counted and turned into powers of ``delta = -A^2 - A^{-2}``.

Everything here is crossing-free.  A crossing has to be resolved by the caller
(crossing = A * one smoothing + A^{-1} * the other) before it reaches this
module; :func:`crossing` builds that sum for adjacent strands.

Closed colored trivalent networks are described as a list of layers of
elementary pieces (:class:`Id`, :class:`Cup`, :class:`Cap`, :class:`Merge`,
:class:`Split`, :class:`Box`).  Evaluation pushes a vector of cup diagrams
(type 0 -> w) up through the layers, so the working set never exceeds
Catalan(w/2) diagrams.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .cyclo import CycloContext, CycloNum, cyclo_context, quantum_int

__all__ = [
    "TLDiagram",
    "TLElement",
    "compose",
    "identity",
    "generator",
    "cup_diagram",
    "cap_diagram",
    "crossing",
    "loop_value",
    "jones_wenzl",
    "markov_trace",
    "Id",
    "Cup",
    "Cap",
    "Merge",
    "Split",
    "Box",
    "ColoredNetwork",
    "evaluate_network",
    "InadmissibleVertex",
    "NetworkError",
]


class NetworkError(ValueError):
    """Malformed network (arity mismatch, open boundary)."""


class InadmissibleVertex(ValueError):
    """A trivalent vertex whose colors fail the level-p admissibility test."""


def _is_noncrossing(pairing: Sequence[int], m: int) -> bool:
    # walk the boundary circle: bottom left->right, then top right->left
    n = len(pairing) - m
    order = list(range(m)) + list(range(m + n - 1, m - 1, -1))
    pos = {pt: k for k, pt in enumerate(order)}
    stack: list[int] = []
    for pt in order:
        partner = pairing[pt]
        if partner == pt or pairing[partner] != pt:
            return False
        if pos[partner] > pos[pt]:
            stack.append(pt)
        else:
            if not stack or stack.pop() != partner:
                return False
    return not stack


@dataclass(frozen=True)
class TLDiagram:
    """Noncrossing perfect matching between ``bottom`` and ``top`` points."""

    bottom: int
    top: int
    pairing: tuple[int, ...]

    def __post_init__(self):
        if len(self.pairing) != self.bottom + self.top:
            raise ValueError("pairing length does not match boundary size")
        if not _is_noncrossing(self.pairing, self.bottom):
            raise ValueError(f"not a noncrossing perfect matching: {self.pairing}")

    @property
    def strands(self) -> int:
        return self.bottom

    def tensor(self, other: "TLDiagram") -> "TLDiagram":
        """Place ``other`` to the right of ``self``."""
        m1, n1, m2, n2 = self.bottom, self.top, other.bottom, other.top

        def relabel1(i: int) -> int:
            return i if i < m1 else i + m2

        def relabel2(i: int) -> int:
            return i + m1 if i < m2 else i - m2 + m1 + m2 + n1

        out = [0] * (m1 + m2 + n1 + n2)
        for i, j in enumerate(self.pairing):
            out[relabel1(i)] = relabel1(j)
        for i, j in enumerate(other.pairing):
            out[relabel2(i)] = relabel2(j)
        return _diag(m1 + m2, n1 + n2, out)

    def __str__(self) -> str:
        arcs = sorted({tuple(sorted((i, j))) for i, j in enumerate(self.pairing)})

        def name(i: int) -> str:
            return f"b{i}" if i < self.bottom else f"t{i - self.bottom}"

        return "[" + " ".join(f"{name(i)}-{name(j)}" for i, j in arcs) + "]"


def _diag(m: int, n: int, pairing: Sequence[int]) -> TLDiagram:
    # trusted constructor: skips the planarity walk
    d = object.__new__(TLDiagram)
    object.__setattr__(d, "bottom", m)
    object.__setattr__(d, "top", n)
    object.__setattr__(d, "pairing", tuple(pairing))
    return d


@functools.lru_cache(maxsize=None)
def identity(n: int) -> TLDiagram:
    return _diag(n, n, [i + n for i in range(n)] + list(range(n)))


@functools.lru_cache(maxsize=None)
def generator(n: int, i: int) -> TLDiagram:
    """e_i on n strands (1 <= i < n): caps strands i-1, i below and above."""
    if not 1 <= i < n:
        raise ValueError(f"e_{i} does not exist on {n} strands")
    pairing = [k + n for k in range(n)] + list(range(n))
    a, b = i - 1, i
    pairing[a], pairing[b] = b, a
    pairing[a + n], pairing[b + n] = b + n, a + n
    return _diag(n, n, pairing)


@functools.lru_cache(maxsize=None)
def cup_diagram(c: int) -> TLDiagram:
    """0 -> 2c: c nested cups."""
    return _diag(0, 2 * c, [2 * c - 1 - t for t in range(2 * c)])


@functools.lru_cache(maxsize=None)
def cap_diagram(c: int) -> TLDiagram:
    """2c -> 0: c nested caps."""
    return _diag(2 * c, 0, [2 * c - 1 - t for t in range(2 * c)])


@functools.lru_cache(maxsize=None)
def merge_diagram(a: int, b: int, c: int) -> TLDiagram:
    """(a + b) -> c: the planar trivalent vertex before idempotents are attached."""
    i = (a + b - c) // 2
    m = a + b
    pairing = [0] * (m + c)
    for t in range(i):
        l, r = a - 1 - t, a + t
        pairing[l], pairing[r] = r, l
    for t in range(a - i):
        pairing[t], pairing[m + t] = m + t, t
    for t in range(b - i):
        src = a + i + t
        dst = m + (a - i) + t
        pairing[src], pairing[dst] = dst, src
    return _diag(m, c, pairing)


def _flip(d: TLDiagram) -> TLDiagram:
    """Mirror top and bottom."""
    m, n = d.bottom, d.top

    def f(i: int) -> int:
        return i + n if i < m else i - m

    out = [0] * (m + n)
    for i, j in enumerate(d.pairing):
        out[f(i)] = f(j)
    return _diag(n, m, out)


@functools.lru_cache(maxsize=None)
def split_diagram(c: int, a: int, b: int) -> TLDiagram:
    """c -> (a + b)."""
    return _flip(merge_diagram(a, b, c))


def compose(d1: TLDiagram, d2: TLDiagram) -> tuple[int, TLDiagram]:
    """``d1 o d2``: stack d1 on top of d2.  Returns (closed loops, diagram)."""
    if d2.top != d1.bottom:
        raise ValueError(f"arity mismatch: {d2.top} top points against {d1.bottom} bottom points")
    lo, up = d2.pairing, d1.pairing
    m, mid, n = d2.bottom, d2.top, d1.top
    out = [0] * (m + n)
    seen = [False] * mid

    # external points: lower bottom (0..m-1) and upper top (m..m+n-1 in result)
    def follow(side: int, idx: int) -> int:
        # idx is a pairing index in the given diagram (0 = lower, 1 = upper)
        while True:
            if side == 0:
                j = lo[idx]
                if j < m:
                    return j
                k = j - m
                seen[k] = True
                side, idx = 1, k
            else:
                j = up[idx]
                if j >= mid:
                    return j - mid + m
                seen[j] = True
                side, idx = 0, j + m

    for i in range(m):
        out[i] = follow(0, i)
    for t in range(n):
        out[m + t] = follow(1, mid + t)
    loops = 0
    for k in range(mid):
        if not seen[k]:
            loops += 1
            # walk the loop
            j = k
            while True:
                seen[j] = True
                j2 = up[j]  # upper partner, in the middle row
                seen[j2] = True
                j = lo[j2 + m] - m
                if j == k:
                    break
    return loops, _diag(m, n, out)


def loop_value(ctx: CycloContext) -> CycloNum:
    """delta = -A^2 - A^{-2}."""
    return -(ctx.a_power(2) + ctx.a_power(-2))


class TLElement:
    """Finite linear combination of diagrams of one type (m -> n)."""

    __slots__ = ("ctx", "bottom", "top", "terms")

    def __init__(self, ctx: CycloContext, bottom: int, top: int, terms: dict | None = None):
        self.ctx = ctx
        self.bottom = bottom
        self.top = top
        self.terms: dict[TLDiagram, CycloNum] = {}
        for d, c in (terms or {}).items():
            if (d.bottom, d.top) != (bottom, top):
                raise ValueError("diagram type does not match element type")
            if c:
                self.terms[d] = c

    @classmethod
    def of(cls, ctx: CycloContext, d: TLDiagram, coeff: CycloNum | int = 1) -> "TLElement":
        c = coeff if isinstance(coeff, CycloNum) else ctx.scalar(coeff)
        return cls(ctx, d.bottom, d.top, {d: c})

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self.bottom, self.top) == (other.bottom, other.top) and self.terms == other.terms

    def __add__(self, other: "TLElement") -> "TLElement":
        if (self.bottom, self.top) != (other.bottom, other.top):
            raise ValueError("cannot add elements of different types")
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return TLElement(self.ctx, self.bottom, self.top, out)

    def __neg__(self) -> "TLElement":
        return TLElement(self.ctx, self.bottom, self.top, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, s: CycloNum | int) -> "TLElement":
        return TLElement(self.ctx, self.bottom, self.top, {d: c * s for d, c in self.terms.items()})

    def __matmul__(self, other: "TLElement") -> "TLElement":
        """Algebra product: ``self`` stacked on top of ``other``."""
        delta = loop_value(self.ctx)
        powers = [self.ctx.one()]
        out: dict[TLDiagram, CycloNum] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                loops, d = compose(d1, d2)
                while len(powers) <= loops:
                    powers.append(powers[-1] * delta)
                c = c1 * c2
                if loops:
                    c = c * powers[loops]
                out[d] = out[d] + c if d in out else c
        return TLElement(self.ctx, other.bottom, self.top, out)

    __mul__ = __matmul__

    def tensor(self, other: "TLElement") -> "TLElement":
        out: dict[TLDiagram, CycloNum] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1.tensor(d2)
                out[d] = out[d] + c1 * c2 if d in out else c1 * c2
        return TLElement(self.ctx, self.bottom + other.bottom, self.top + other.top, out)

    def coefficient(self, d: TLDiagram) -> CycloNum:
        return self.terms.get(d, self.ctx.zero())

    def scalar_value(self) -> CycloNum:
        """Value of a (0 -> 0) element."""
        if self.bottom or self.top:
            raise NetworkError("element has open boundary")
        return self.terms.get(_diag(0, 0, ()), self.ctx.zero())

    def dump(self) -> str:
        lines = [f"TLElement({self.bottom} -> {self.top}, {len(self.terms)} terms)"]
        for d in sorted(self.terms, key=lambda d: d.pairing):
            lines.append(f"  {d}: {self.terms[d]}")
        return "\n".join(lines)


def tl_identity(ctx: CycloContext, n: int) -> TLElement:
    return TLElement.of(ctx, identity(n))


def crossing(ctx: CycloContext, n: int, i: int, inverse: bool = False) -> TLElement:
    """Resolved crossing of strands i-1, i on n strands: A*id + A^{-1}*e_i."""
    a = ctx.a_power(-1 if inverse else 1)
    b = ctx.a_power(1 if inverse else -1)
    return TLElement(ctx, n, n, {identity(n): a, generator(n, i): b})


@functools.lru_cache(maxsize=None)
def _jw(p: int, n: int) -> TLElement:
    ctx = cyclo_context(p)
    if n <= 1:
        return tl_identity(ctx, n)
    prev = _jw(p, n - 1).tensor(tl_identity(ctx, 1))
    e = TLElement.of(ctx, generator(n, n - 1))
    # f_n = f_{n-1} - (Delta_{n-2} / Delta_{n-1}) f_{n-1} e_{n-1} f_{n-1}, Delta_k = (-1)^k [k+1]
    ratio = quantum_int(ctx, n - 1) / quantum_int(ctx, n)
    return prev + (prev @ e @ prev).scale(ratio)


def jones_wenzl(ctx: CycloContext, n: int) -> TLElement:
    """The Jones-Wenzl idempotent f_n, by Wenzl's recursion.

    With loop value -[2] the recursion reads f_{n+1} = f_n + ([n]/[n+1]) f_n e_n f_n,
    so f_2 = id + e_1/[2].

    Needs [1], ..., [n] nonzero, which at level p means n <= p/2 - 1.
    """
    if n < 0:
        raise ValueError("negative strand count")
    for k in range(1, n + 1):
        if not quantum_int(ctx, k):
            raise ValueError(f"f_{n} undefined at p={ctx.p}: quantum integer [{k}] vanishes")
    return _jw(ctx.p, n)


def markov_trace(x: TLElement) -> CycloNum:
    """Close an (n -> n) element on the right and evaluate."""
    if x.bottom != x.top:
        raise ValueError("trace needs a square element")
    n = x.bottom
    ctx = x.ctx
    cup = TLElement.of(ctx, cup_diagram(n))
    cap = TLElement.of(ctx, cap_diagram(n))
    closed = cap @ x.tensor(tl_identity(ctx, n)) @ cup
    return closed.scalar_value()


# -- networks -------------------------------------------------------------


@dataclass(frozen=True)
class Id:
    c: int

    @property
    def ins(self) -> tuple[int, ...]:
        return (self.c,)

    @property
    def outs(self) -> tuple[int, ...]:
        return (self.c,)


@dataclass(frozen=True)
class Box:
    """Explicit idempotent on one edge (edges already carry one implicitly)."""

    c: int

    @property
    def ins(self) -> tuple[int, ...]:
        return (self.c,)

    @property
    def outs(self) -> tuple[int, ...]:
        return (self.c,)


@dataclass(frozen=True)
class Cup:
    c: int

    @property
    def ins(self) -> tuple[int, ...]:
        return ()

    @property
    def outs(self) -> tuple[int, ...]:
        return (self.c, self.c)


@dataclass(frozen=True)
class Cap:
    c: int

    @property
    def ins(self) -> tuple[int, ...]:
        return (self.c, self.c)

    @property
    def outs(self) -> tuple[int, ...]:
        return ()


@dataclass(frozen=True)
class Merge:
    """Trivalent vertex with edges a, b below and c above."""

    a: int
    b: int
    c: int

    @property
    def ins(self) -> tuple[int, ...]:
        return (self.a, self.b)

    @property
    def outs(self) -> tuple[int, ...]:
        return (self.c,)


@dataclass(frozen=True)
class Split:
    """Trivalent vertex with edge c below and a, b above."""

    c: int
    a: int
    b: int

    @property
    def ins(self) -> tuple[int, ...]:
        return (self.c,)

    @property
    def outs(self) -> tuple[int, ...]:
        return (self.a, self.b)


Piece = Union[Id, Box, Cup, Cap, Merge, Split]


@dataclass(frozen=True)
class ColoredNetwork:
    """Closed planar colored trivalent network given bottom-to-top as layers."""

    layers: tuple[tuple[Piece, ...], ...]

    @classmethod
    def from_layers(cls, layers: Iterable[Iterable[Piece]]) -> "ColoredNetwork":
        net = cls(tuple(tuple(layer) for layer in layers))
        net.check()
        return net

    def check(self) -> None:
        row: tuple[int, ...] = ()
        for k, layer in enumerate(self.layers):
            ins = tuple(c for piece in layer for c in piece.ins)
            if ins != row:
                raise NetworkError(f"layer {k} expects {ins}, receives {row}")
            row = tuple(c for piece in layer for c in piece.outs)
        if row:
            raise NetworkError(f"network is not closed: top boundary {row}")

    def vertices(self) -> list[tuple[int, int, int]]:
        out = []
        for layer in self.layers:
            for piece in layer:
                if isinstance(piece, Merge):
                    out.append((piece.a, piece.b, piece.c))
                elif isinstance(piece, Split):
                    out.append((piece.a, piece.b, piece.c))
        return out


def _realizable(a: int, b: int, c: int) -> bool:
    return min(a, b, c) >= 0 and (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def _apply_block(state: dict, op: TLElement, pos: int, ctx: CycloContext, delta_pows: list) -> dict:
    """Apply op (on strands pos .. pos+op.bottom-1) to a vector of cup diagrams."""
    out: dict[TLDiagram, CycloNum] = {}
    cache: dict[int, TLDiagram] = {}
    for s, cs in state.items():
        w = s.top
        right = w - pos - op.bottom
        for d, cd in op.terms.items():
            full = cache.get(id(d))
            if full is None:
                full = identity(pos).tensor(d).tensor(identity(right))
                cache[id(d)] = full
            loops, r = compose(full, s)
            while len(delta_pows) <= loops:
                delta_pows.append(delta_pows[-1] * delta_pows[1])
            c = cs * cd
            if loops:
                c = c * delta_pows[loops]
            if r in out:
                out[r] = out[r] + c
            else:
                out[r] = c
    return {d: c for d, c in out.items() if c}


def evaluate_network(net: ColoredNetwork, p: int, check_admissible: bool = True) -> CycloNum:
    """Kauffman bracket of a closed colored network with Jones-Wenzl edges.

    With ``check_admissible`` a vertex failing the level-p conditions raises
    :class:`InadmissibleVertex`.  Without it, only planar realizability is
    required; an unrealizable vertex (parity or triangle failure) makes the
    value 0.
    """
    from .recoupling import admissible  # noqa: PLC0415  (import cycle)

    ctx = cyclo_context(p)
    net.check()
    for a, b, c in net.vertices():
        if check_admissible:
            if not admissible(a, b, c, p):
                raise InadmissibleVertex(f"vertex ({a},{b},{c}) is not admissible at p={p}")
        elif not _realizable(a, b, c):
            return ctx.zero()
    delta_pows = [ctx.one(), loop_value(ctx)]
    state: dict[TLDiagram, CycloNum] = {_diag(0, 0, ()): ctx.one()}
    row: list[int] = []
    for layer in net.layers:
        pos = 0  # strand offset in the current (partially updated) row
        new_row: list[int] = []
        for piece in layer:
            if isinstance(piece, Id):
                pos += piece.c
            elif isinstance(piece, Box):
                if piece.c > 1:
                    state = _apply_block(state, jones_wenzl(ctx, piece.c), pos, ctx, delta_pows)
                pos += piece.c
            elif isinstance(piece, Cup):
                c = piece.c
                state = _apply_block(state, TLElement.of(ctx, cup_diagram(c)), pos, ctx, delta_pows)
                if c > 1:
                    state = _apply_block(state, jones_wenzl(ctx, c), pos, ctx, delta_pows)
                pos += 2 * c
            elif isinstance(piece, Cap):
                state = _apply_block(state, TLElement.of(ctx, cap_diagram(piece.c)), pos, ctx, delta_pows)
            elif isinstance(piece, Merge):
                a, b, c = piece.a, piece.b, piece.c
                state = _apply_block(state, TLElement.of(ctx, merge_diagram(a, b, c)), pos, ctx, delta_pows)
                if c > 1:
                    state = _apply_block(state, jones_wenzl(ctx, c), pos, ctx, delta_pows)
                pos += c
            elif isinstance(piece, Split):
                c, a, b = piece.c, piece.a, piece.b
                state = _apply_block(state, TLElement.of(ctx, split_diagram(c, a, b)), pos, ctx, delta_pows)
                if a > 1:
                    state = _apply_block(state, jones_wenzl(ctx, a), pos, ctx, delta_pows)
                if b > 1:
                    state = _apply_block(state, jones_wenzl(ctx, b), pos + a, ctx, delta_pows)
                pos += a + b
            else:
                raise NetworkError(f"unknown piece {piece!r}")
            new_row.extend(piece.outs)
            if not state:
                return ctx.zero()
        row = new_row
    assert not row
    return state.get(_diag(0, 0, ()), ctx.zero())
