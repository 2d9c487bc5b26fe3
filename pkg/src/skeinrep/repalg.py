"""Generated algebras, commutants and membership, all by exact elimination."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import matrix as mx
from .cyclo import cyclo_context
from .spine import SurfaceSpec
from .tqft_ops import Operator, curve_generators, dim_of, push_generators


class MixedSpecs(ValueError):
    pass


def _common_spec(ops: Sequence[Operator], spec: SurfaceSpec | None = None) -> SurfaceSpec:
    specs = {op.spec for op in ops}
    if spec is not None:
        specs.add(spec)
    if len(specs) > 1:
        raise MixedSpecs("generators come from different surface specs")
    if not specs:
        raise ValueError("cannot infer a surface spec from an empty generator list")
    return specs.pop()


@dataclass
class AlgebraBasis:
    """Echelon basis (rows of length dim^2) of a unital matrix algebra."""

    spec: SurfaceSpec
    rows: list
    pivots: list[int]
    generators: list[Operator] = field(repr=False, default_factory=list)
    rounds: int = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: list) -> list:
        """Remainder of ``v`` after eliminating against the basis pivots."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return v

    def insert(self, v: list) -> bool:
        """Add ``v`` if independent; keeps the basis fully reduced. Returns True if added."""
        r = self.reduce(v)
        pc = next((i for i, x in enumerate(r) if x), None)
        if pc is None:
            return False
        inv = r[pc].inverse()
        r = [x * inv if x else x for x in r]
        for idx, row in enumerate(self.rows):
            f = row[pc]
            if f:
                self.rows[idx] = [x - f * y if y else x for x, y in zip(row, r)]
        pos = next((i for i, q in enumerate(self.pivots) if q > pc), len(self.pivots))
        self.rows.insert(pos, r)
        self.pivots.insert(pos, pc)
        return True

    def operators(self) -> list[Operator]:
        n = dim_of(self.spec)
        return [Operator(self.spec, mx.unflatten(r, n)) for r in self.rows]


def _products(gens: Sequence[Operator], frontier: Sequence[Operator], threads: int) -> list[Operator]:
    pairs = [(g, b) for b in frontier for g in gens]
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda gb: gb[0] @ gb[1], pairs))
    return [g @ b for g, b in pairs]


def saturate(gens: Sequence[Operator], spec: SurfaceSpec | None = None, threads: int = 1) -> AlgebraBasis:
    """Linear basis of the unital algebra generated by ``gens``.

    Starts from {id} and the generators; each round left-multiplies the
    elements added in the previous round by every generator; stops after a
    round that adds nothing.
    """
    spec = _common_spec(gens, spec)
    basis = AlgebraBasis(spec, [], [], list(gens))
    frontier = []
    for op in [Operator.identity(spec), *gens]:
        if basis.insert(mx.flatten(op.matrix)):
            frontier.append(op)
    rounds = 0
    while frontier and gens:
        rounds += 1
        new = []
        for prod in _products(gens, frontier, threads):
            if basis.insert(mx.flatten(prod.matrix)):
                new.append(prod)
        frontier = new
    basis.rounds = rounds
    return basis


def _commutator_rows(gens: Sequence[Operator], n: int) -> list[list]:
    """Rows of the linear system X M - M X = 0, unknowns X[a][b] flattened row-major."""
    if not gens:
        return []
    ctx = gens[0].ctx
    rows = []
    for op in gens:
        M = op.matrix
        for i in range(n):
            for j in range(n):
                # (XM - MX)[i][j] = sum_k X[i][k] M[k][j] - M[i][k] X[k][j]
                row = [ctx.zero()] * (n * n)
                for k in range(n):
                    if M[k][j]:
                        row[i * n + k] = row[i * n + k] + M[k][j]
                    if M[i][k]:
                        row[k * n + j] = row[k * n + j] - M[i][k]
                if any(row):
                    rows.append(row)
    return rows


def commutant_basis(gens: Sequence[Operator], spec: SurfaceSpec | None = None) -> list[Operator]:
    spec = _common_spec(gens, spec)
    n = dim_of(spec)
    ctx = cyclo_context(spec.p)
    vecs = mx.kernel(_commutator_rows(gens, n), n * n, ctx)
    return [Operator(spec, mx.unflatten(v, n)) for v in vecs]


def commutant_dim(gens: Sequence[Operator], spec: SurfaceSpec | None = None) -> int:
    """dim {X : XM = MX for every generator M}."""
    spec = _common_spec(gens, spec)
    n = dim_of(spec)
    rows = _commutator_rows(gens, n)
    if not rows:
        return n * n
    red, _ = mx.rref(rows, cyclo_context(spec.p))
    return n * n - len(red)


def contains(x: Operator, basis: AlgebraBasis) -> bool:
    if x.spec != basis.spec:
        raise MixedSpecs("operator and algebra belong to different specs")
    return not any(basis.reduce(mx.flatten(x.matrix)))


@dataclass
class AlgebraReport:
    spec: SurfaceSpec
    mode: str
    dim: int
    algebra_dim: int | None
    commutant_dim: int
    verdict: str
    rounds: int | None
    certificate: list[Operator] = field(default_factory=list, repr=False)

    def to_json(self, certificate: bool = False) -> dict:
        out = {
            "spec": {"genus": self.spec.g, "points": list(self.spec.k), "level": self.spec.p},
            "generators": self.mode,
            "dim": self.dim,
            "algebra_dim": self.algebra_dim,
            "commutant_dim": self.commutant_dim,
            "verdict": self.verdict,
            "rounds": self.rounds,
        }
        if certificate:
            out["certificate"] = [op.to_json() for op in self.certificate]
        return out


class IntegrityError(RuntimeError):
    """Saturation and commutant disagree."""


class ZeroSpace(ValueError):
    """V_p(S, k) has no admissible coloring; (ir)reducibility is undefined."""


def generators_for(spec: SurfaceSpec, mode: str) -> list[Operator]:
    if mode == "point-pushing":
        return push_generators(spec)
    if mode == "curves":
        return curve_generators(spec)
    if mode == "both":
        return push_generators(spec) + curve_generators(spec)
    raise ValueError(f"unknown generator mode {mode!r}")


def analyze(spec: SurfaceSpec, mode: str = "point-pushing", method: str = "both", threads: int = 1) -> AlgebraReport:
    """Build generators, saturate and/or compute the commutant, cross-check, report.

    The verdict is ``irreducible`` iff the commutant is one-dimensional; a
    reducible verdict carries the commutant basis as certificate.
    """
    if method not in ("both", "saturation", "commutant"):
        raise ValueError(f"unknown method {method!r}")
    n = dim_of(spec)
    if n == 0:
        raise ZeroSpace(f"V_p{spec.describe()} is zero-dimensional (no admissible coloring)")
    gens = generators_for(spec, mode)
    alg_dim = rounds = None
    if method in ("both", "saturation"):
        alg = saturate(gens, spec, threads=threads)
        alg_dim, rounds = alg.dim, alg.rounds
    cert = commutant_basis(gens, spec)
    cdim = len(cert)
    if method in ("both", "commutant") and cdim != commutant_dim(gens, spec):
        raise IntegrityError("commutant basis size disagrees with rank computation")
    if alg_dim is not None and (alg_dim == n * n) != (cdim == 1):
        raise IntegrityError(f"algebra_dim={alg_dim} but commutant_dim={cdim} (dim {n})")
    verdict = "irreducible" if cdim == 1 else "reducible"
    return AlgebraReport(spec, mode, n, alg_dim, cdim, verdict, rounds, [] if cdim == 1 else cert)
