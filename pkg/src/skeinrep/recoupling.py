"""Closed-form recoupling data at level p: admissibility, loop, theta, tetrahedron, 6j, twist.

Labels follow the Kauffman-Lins conventions for planar networks with
Jones-Wenzl edges.  A tetrahedron ``(A, B, E; C, D, F)`` has vertex triples
``(A, B, E)``, ``(C, D, E)``, ``(A, C, F)``, ``(B, D, F)``.

Every value here is checked against :func:`skeinrep.tldiag.evaluate_network`
on the corresponding network (see :func:`theta_network`, :func:`tet_network`
and :func:`validate`).
"""

from __future__ import annotations

import functools
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .cyclo import CycloNum, cyclo_context, quantum_factorial, quantum_int
from .tldiag import Cap, ColoredNetwork, Cup, Id, Merge, Split, evaluate_network

CACHE_VERSION = 1


class InadmissibleError(ValueError):
    pass


def admissible(a: int, b: int, c: int, p: int) -> bool:
    """Level-p admissibility of a vertex triple."""
    top = p // 2 - 2
    if not (0 <= a <= top and 0 <= b <= top and 0 <= c <= top):
        return False
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= p - 4


def _color_ok(c: int, p: int) -> None:
    if not 0 <= c <= p // 2 - 2:
        raise InadmissibleError(f"color {c} outside 0..{p // 2 - 2} at p={p}")


def _require(a: int, b: int, c: int, p: int) -> None:
    if not admissible(a, b, c, p):
        raise InadmissibleError(f"triple ({a},{b},{c}) is not admissible at p={p}")


@functools.lru_cache(maxsize=None)
def delta(c: int, p: int) -> CycloNum:
    """Loop colored c: (-1)^c [c+1]."""
    _color_ok(c, p)
    v = quantum_int(cyclo_context(p), c + 1)
    return -v if c % 2 else v


@functools.lru_cache(maxsize=None)
def theta(a: int, b: int, c: int, p: int) -> CycloNum:
    _require(a, b, c, p)
    ctx = cyclo_context(p)
    i, j, k = (b + c - a) // 2, (a + c - b) // 2, (a + b - c) // 2
    f = lambda n: quantum_factorial(ctx, n)  # noqa: E731
    v = f(i + j + k + 1) * f(i) * f(j) * f(k) / (f(i + j) * f(j + k) * f(i + k))
    return -v if (i + j + k) % 2 else v


def tet_triples(A: int, B: int, E: int, C: int, D: int, F: int) -> list[tuple[int, int, int]]:
    return [(A, B, E), (C, D, E), (A, C, F), (B, D, F)]


@functools.lru_cache(maxsize=None)
def tet(A: int, B: int, E: int, C: int, D: int, F: int, p: int) -> CycloNum:
    """Tetrahedral network value (Kauffman-Lins closed form)."""
    for t in tet_triples(A, B, E, C, D, F):
        _require(*t, p)
    ctx = cyclo_context(p)
    f = lambda n: quantum_factorial(ctx, n)  # noqa: E731
    faces = [sum(t) // 2 for t in tet_triples(A, B, E, C, D, F)]
    # opposite edge pairs: (E, F), (A, D), (B, C)
    total = A + B + C + D + E + F
    squares = [(total - E - F) // 2, (total - A - D) // 2, (total - B - C) // 2]
    num = ctx.one()
    for bj in squares:
        for ai in faces:
            num = num * f(bj - ai)
    den = f(A) * f(B) * f(C) * f(D) * f(E) * f(F)
    s_sum = ctx.zero()
    for s in range(max(faces), min(squares) + 1):
        term = f(s + 1)
        d = ctx.one()
        for ai in faces:
            d = d * f(s - ai)
        for bj in squares:
            d = d * f(bj - s)
        term = term / d
        s_sum = s_sum + (-term if s % 2 else term)
    return num / den * s_sum


_active_table: "RecouplingTable | None" = None


def use_table(table: "RecouplingTable | None") -> None:
    """Route sixj lookups through ``table`` (None switches the cache off)."""
    global _active_table
    _active_table = table


def sixj(A: int, B: int, E: int, C: int, D: int, F: int, p: int) -> CycloNum:
    table = _active_table
    if table is not None and table.p == p:
        return table.get("sixj", (A, B, E, C, D, F))
    return _sixj(A, B, E, C, D, F, p)


@functools.lru_cache(maxsize=None)
def _sixj(A: int, B: int, E: int, C: int, D: int, F: int, p: int) -> CycloNum:
    """{A B E; C D F} = Tet * Delta_F / (theta(A,C,F) theta(B,D,F)).

    Coefficient of the tree with vertices (A,C,F), (B,D,F) in the expansion of
    the tree with vertices (A,B,E), (C,D,E); legs in cyclic order A, B, D, C.
    """
    return tet(A, B, E, C, D, F, p) * delta(F, p) / (theta(A, C, F, p) * theta(B, D, F, p))


@functools.lru_cache(maxsize=None)
def twist_coeff(c: int, p: int) -> CycloNum:
    """mu_c = (-1)^c A^{c^2 + 2c}, the positive-curl eigenvalue on color c."""
    _color_ok(c, p)
    v = cyclo_context(p).a_power(c * c + 2 * c)
    return -v if c % 2 else v


def curve_eigenvalue(c: int, p: int) -> CycloNum:
    """lambda_c = -A^{2c+2} - A^{-2c-2}: a color-1 loop around a color-c edge."""
    ctx = cyclo_context(p)
    return -(ctx.a_power(2 * c + 2) + ctx.a_power(-2 * c - 2))


# -- oracle networks ---------------------------------------------------------


def loop_network(c: int) -> ColoredNetwork:
    return ColoredNetwork.from_layers([[Cup(c)], [Cap(c)]])


def theta_network(a: int, b: int, c: int) -> ColoredNetwork:
    return ColoredNetwork.from_layers(
        [[Cup(c)], [Id(c), Split(c, a, b)], [Id(c), Merge(a, b, c)], [Cap(c)]]
    )


def tet_network(A: int, B: int, E: int, C: int, D: int, F: int) -> ColoredNetwork:
    return ColoredNetwork.from_layers(
        [
            [Cup(F)],
            [Split(F, C, A), Split(F, B, D)],
            [Id(C), Merge(A, B, E), Id(D)],
            [Merge(C, E, D), Id(D)],
            [Cap(D)],
        ]
    )


def oracle_delta(c: int, p: int) -> CycloNum:
    return evaluate_network(loop_network(c), p, check_admissible=False)


def oracle_theta(a: int, b: int, c: int, p: int, check: bool = True) -> CycloNum:
    return evaluate_network(theta_network(a, b, c), p, check_admissible=check)


def oracle_tet(six: tuple[int, ...], p: int) -> CycloNum:
    return evaluate_network(tet_network(*six), p)


# -- enumeration and validation --------------------------------------------


def admissible_triples(p: int, max_color: int) -> Iterator[tuple[int, int, int]]:
    top = min(max_color, p // 2 - 2)
    for a in range(top + 1):
        for b in range(top + 1):
            for c in range(top + 1):
                if admissible(a, b, c, p):
                    yield (a, b, c)


def admissible_sixes(p: int, max_color: int) -> Iterator[tuple[int, ...]]:
    top = min(max_color, p // 2 - 2)
    rng = range(top + 1)
    for A in rng:
        for B in rng:
            for E in rng:
                if not admissible(A, B, E, p):
                    continue
                for C in rng:
                    for D in rng:
                        if not admissible(C, D, E, p):
                            continue
                        for F in rng:
                            if admissible(A, C, F, p) and admissible(B, D, F, p):
                                yield (A, B, E, C, D, F)


@dataclass(frozen=True)
class GateEntry:
    kind: str
    labels: tuple[int, ...]
    p: int
    ok: bool

    def as_dict(self) -> dict:
        return {"kind": self.kind, "labels": list(self.labels), "p": self.p, "ok": self.ok}


def _check_entry(job: tuple) -> GateEntry:
    kind, labels, p = job
    if kind == "delta":
        ok = delta(labels[0], p) == oracle_delta(labels[0], p)
    elif kind == "theta":
        ok = theta(*labels, p) == oracle_theta(*labels, p)
    elif kind == "tet":
        ok = tet(*labels, p) == oracle_tet(labels, p)
    elif kind == "admissible":
        # oracle computable while every idempotent exists: colors <= p/2 - 1
        ok = admissible(*labels, p) == bool(oracle_theta(*labels, p, check=False))
    else:
        raise ValueError(kind)
    return GateEntry(kind, tuple(labels), p, ok)


def gate_jobs(p: int, max_color: int) -> list[tuple]:
    jobs: list[tuple] = []
    for c in range(min(max_color, p // 2 - 2) + 1):
        jobs.append(("delta", (c,), p))
    for t in admissible_triples(p, max_color):
        jobs.append(("theta", t, p))
    for six in admissible_sixes(p, max_color):
        jobs.append(("tet", six, p))
    top = min(max_color, p // 2 - 1)
    for a in range(top + 1):
        for b in range(top + 1):
            for c in range(top + 1):
                jobs.append(("admissible", (a, b, c), p))
    return jobs


def validate(p: int, max_color: int, workers: int = 1) -> list[GateEntry]:
    """Closed forms against the Temperley-Lieb oracle; one entry per label."""
    jobs = gate_jobs(p, max_color)
    if workers <= 1:
        return [_check_entry(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check_entry, jobs, chunksize=8))


# -- table cache -------------------------------------------------------------


def cache_dir() -> Path | None:
    d = os.environ.get("SKEINREP_CACHE_DIR")
    return Path(d) if d else None


class RecouplingTable:
    """Values of theta, tet and sixj at one level, optionally backed by a JSON file.

    The file is advisory: entries are recomputed if missing, and a version or
    level mismatch discards the file.
    """

    def __init__(self, p: int, path: Path | None = None):
        self.p = p
        self.path = path
        self.entries: dict[tuple[str, tuple[int, ...]], CycloNum] = {}
        if path is not None and path.exists():
            self._load()

    @classmethod
    def for_level(cls, p: int, directory: Path | None = None) -> "RecouplingTable":
        directory = directory or cache_dir()
        path = directory / f"recoupling-p{p}-v{CACHE_VERSION}.json" if directory else None
        return cls(p, path)

    def _load(self) -> None:
        try:
            data = json.loads(self.path.read_text())
        except (OSError, ValueError):
            return
        if data.get("version") != CACHE_VERSION or data.get("p") != self.p:
            return
        for e in data.get("entries", []):
            self.entries[(e["kind"], tuple(e["labels"]))] = CycloNum.from_json(e["value"])

    def get(self, kind: str, labels: tuple[int, ...]) -> CycloNum:
        key = (kind, tuple(labels))
        if key not in self.entries:
            fn = {"delta": delta, "theta": theta, "tet": tet, "sixj": _sixj}[kind]
            self.entries[key] = fn(*labels, self.p)
        return self.entries[key]

    def to_json(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "p": self.p,
            "entries": [
                {"kind": k, "labels": list(l), "value": v.to_json()}
                for (k, l), v in sorted(self.entries.items())
            ],
        }

    def save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self.to_json(), sort_keys=True))
        tmp.replace(self.path)
