"""Rigidity matrices of linearly constrained frameworks and randomized generic decisions.

"Generic" is realised by evaluating at uniformly random points of GF(P).  A
rank computed this way can only undershoot the generic rank, so verdicts are
one-sided: a reported independent/rigid verdict is always correct, while a
dependent/flexible verdict is wrong with probability at most the
Schwartz-Zippel bound returned alongside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .algebra import (
    DEFAULT_PRIME,
    DEFAULT_TRIALS,
    ExactMatrix,
    RandomSource,
    failure_bound,
    nullspace_basis,
    rank,
)
from .graph import ElementId, GraphError, Loop, LoopedGraph, element_key


class HypothesisError(ValueError):
    """An operation's mathematical precondition does not hold for the input."""


@dataclass(frozen=True)
class Realisation:
    """Points p: V -> F^d and loop normals q: L -> F^d; ``modulus`` None means Q."""

    dim: int
    points: tuple
    normals: dict
    modulus: Optional[int] = None

    def covers(self, g: LoopedGraph) -> bool:
        if len(self.points) < g.n:
            return False
        if any(lid not in self.normals for lid, _ in g.loops):
            return False
        vecs = list(self.points[: g.n]) + [self.normals[lid] for lid, _ in g.loops]
        return all(len(x) == self.dim for x in vecs)


def random_realisation(g: LoopedGraph, d: int, rs: RandomSource, modulus: int = DEFAULT_PRIME) -> Realisation:
    vals = rs.field_elements(d * (g.n + len(g.loops)), modulus)
    points = tuple(tuple(vals[i * d:(i + 1) * d]) for i in range(g.n))
    off = d * g.n
    normals = {lid: tuple(vals[off + j * d:off + (j + 1) * d]) for j, (lid, _) in enumerate(g.loops)}
    return Realisation(d, points, normals, modulus)


def random_integer_realisation(g: LoopedGraph, d: int, rs: RandomSource, bound: int = 10**6) -> Realisation:
    """Rational realisation with integer coordinates drawn from [-bound, bound]."""
    vals = rs.integers(d * (g.n + len(g.loops)), -bound, bound)
    points = tuple(tuple(vals[i * d:(i + 1) * d]) for i in range(g.n))
    off = d * g.n
    normals = {lid: tuple(vals[off + j * d:off + (j + 1) * d]) for j, (lid, _) in enumerate(g.loops)}
    return Realisation(d, points, normals, None)


@dataclass(frozen=True)
class RigidityMatrix:
    matrix: ExactMatrix
    row_index: tuple  # row -> ElementId
    col_index: tuple  # column -> (vertex, coordinate)

    def rows_for(self, elements: Iterable[ElementId]) -> ExactMatrix:
        pos = {el: i for i, el in enumerate(self.row_index)}
        return self.matrix.select_rows(sorted(pos[el] for el in elements))


@dataclass(frozen=True)
class Motion:
    """Infinitesimal velocity per vertex."""

    velocities: tuple

    def at(self, v: int) -> tuple:
        return self.velocities[v]


@dataclass(frozen=True)
class CircuitWitness:
    elements: tuple
    pivot: ElementId


@dataclass(frozen=True)
class RankEstimate:
    rank: int
    trials: int
    nrows: int
    ncols: int
    bound: float


def build_matrix(g: LoopedGraph, r: Realisation) -> RigidityMatrix:
    """R(G, p, q); rows in scan order (loops by id, then edges)."""
    if r.dim < 1:
        raise ValueError("dimension must be at least 1")
    if not r.covers(g):
        raise GraphError("realisation does not assign every vertex and loop of the graph")
    d = r.dim
    ncols = d * g.n
    rows = []
    order = g.elements()
    for el in order:
        row = [0] * ncols
        if isinstance(el, Loop):
            v = g.loop_vertex[el.id]
            row[d * v:d * v + d] = r.normals[el.id]
        else:
            pu, pv = r.points[el.u], r.points[el.v]
            row[d * el.u:d * el.u + d] = [a - b for a, b in zip(pu, pv)]
            row[d * el.v:d * el.v + d] = [b - a for a, b in zip(pu, pv)]
        rows.append(row)
    col_index = tuple((v, c) for v in range(g.n) for c in range(d))
    return RigidityMatrix(ExactMatrix(tuple(rows), ncols, r.modulus), tuple(order), col_index)


def build_pinned_matrix(g: LoopedGraph, pinned: Iterable[int], r: Realisation) -> ExactMatrix:
    """R^pin(G, P, p): bar-joint matrix with the column blocks of pinned vertices removed."""
    if g.loops:
        raise GraphError("pinned matrices are defined for loopless graphs")
    pinned = set(pinned)
    if any(not 0 <= v < g.n for v in pinned):
        raise GraphError("pinned set contains an unknown vertex")
    full = build_matrix(g, r)
    keep = [j for j, (v, _) in enumerate(full.col_index) if v not in pinned]
    return full.matrix.select_cols(keep)


def estimate_generic_rank(
    g: LoopedGraph,
    d: int,
    rs: RandomSource,
    trials: int = DEFAULT_TRIALS,
    modulus: int = DEFAULT_PRIME,
) -> tuple:
    """Max rank over random GF(modulus) realisations.

    Returns ``(RankEstimate, best_realisation)``.  Stops early once the rank
    reaches min(rows, cols), since no further trial can exceed it.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    nrows, ncols = g.num_elements, d * g.n
    ceiling = min(nrows, ncols)
    best, best_r, used = -1, None, 0
    for _ in range(max(1, trials)):
        real = random_realisation(g, d, rs, modulus)
        used += 1
        rk = rank(build_matrix(g, real).matrix)
        if rk > best:
            best, best_r = rk, real
        if best == ceiling:
            break
    bound = 0.0 if best == ceiling else failure_bound(nrows, ncols, used, modulus)
    return RankEstimate(best, used, nrows, ncols, bound), best_r


def generic_rank(g: LoopedGraph, d: int, rs: RandomSource, trials: int = DEFAULT_TRIALS,
                 modulus: int = DEFAULT_PRIME) -> int:
    return estimate_generic_rank(g, d, rs, trials, modulus)[0].rank


def is_independent(g: LoopedGraph, d: int, rs: RandomSource, trials: int = DEFAULT_TRIALS,
                   modulus: int = DEFAULT_PRIME) -> bool:
    return generic_rank(g, d, rs, trials, modulus) == g.num_elements


def is_rigid(g: LoopedGraph, d: int, rs: RandomSource, trials: int = DEFAULT_TRIALS,
             modulus: int = DEFAULT_PRIME) -> bool:
    return generic_rank(g, d, rs, trials, modulus) == d * g.n


def pinned_generic_rank(g: LoopedGraph, pinned: Iterable[int], d: int, rs: RandomSource,
                        trials: int = DEFAULT_TRIALS, modulus: int = DEFAULT_PRIME) -> int:
    pinned = set(pinned)
    ceiling = min(len(g.edges), d * (g.n - len(pinned)))
    best = 0
    for _ in range(max(1, trials)):
        best = max(best, rank(build_pinned_matrix(g, pinned, random_realisation(g, d, rs, modulus))))
        if best == ceiling:
            break
    return best


def is_pinned_independent(g: LoopedGraph, pinned: Iterable[int], d: int, rs: RandomSource,
                          trials: int = DEFAULT_TRIALS, modulus: int = DEFAULT_PRIME) -> bool:
    """Row independence of R^pin at random points; P empty is plain bar-joint independence."""
    return pinned_generic_rank(g, pinned, d, rs, trials, modulus) == len(g.edges)


def motion_space(g: LoopedGraph, r: Realisation) -> list:
    """Basis of infinitesimal motions; empty iff (G, p, q) is infinitesimally rigid."""
    rm = build_matrix(g, r)
    d = r.dim
    out = []
    for x in nullspace_basis(rm.matrix):
        out.append(Motion(tuple(tuple(x[d * v:d * v + d]) for v in range(g.n))))
    return out


def is_motion(g: LoopedGraph, r: Realisation, motion: Motion) -> bool:
    """Check both constraint families by direct substitution."""
    p = r.modulus

    def zero(x):
        return (x % p == 0) if p is not None else x == 0

    for u, v in g.edges:
        du = [a - b for a, b in zip(r.points[u], r.points[v])]
        dv = [a - b for a, b in zip(motion.at(u), motion.at(v))]
        if not zero(sum(a * b for a, b in zip(du, dv))):
            return False
    for lid, v in g.loops:
        if not zero(sum(a * b for a, b in zip(r.normals[lid], motion.at(v)))):
            return False
    return True


def _dependent(rm: RigidityMatrix, elements) -> bool:
    return rank(rm.rows_for(elements)) < len(elements)


def is_circuit(g: LoopedGraph, elements, d: int, rs: RandomSource, trials: int = DEFAULT_TRIALS,
               modulus: int = DEFAULT_PRIME) -> bool:
    """Generic minimal dependence: rank(C) = |C|-1 and every C - x independent."""
    elements = list(elements)
    sub = g.spanning_subgraph(elements)
    if generic_rank(sub, d, rs, trials, modulus) != len(elements) - 1:
        return False
    return all(is_independent(sub.without(x), d, rs, trials, modulus) for x in elements)


def find_circuit(g: LoopedGraph, d: int, rs: RandomSource, trials: int = DEFAULT_TRIALS,
                 modulus: int = DEFAULT_PRIME, attempts: int = 3) -> Optional[CircuitWitness]:
    """Some generic circuit of g, or None when g is independent.

    Deletion reduction at the best random point found: scan loops then edges
    and drop each element whose removal leaves the set dependent.  The result
    is re-verified at fresh points; a failed verification (an unlucky point)
    triggers another attempt.
    """
    for _ in range(max(1, attempts)):
        est, real = estimate_generic_rank(g, d, rs, trials, modulus)
        if est.rank == g.num_elements:
            return None
        rm = build_matrix(g, real)
        current = list(g.elements())
        for el in list(current):
            trial = [x for x in current if x != el]
            if _dependent(rm, trial):
                current = trial
        current.sort(key=element_key)
        if is_circuit(g, current, d, rs, trials, modulus):
            return CircuitWitness(tuple(current), current[0])
    raise RuntimeError("circuit extraction failed verification repeatedly")


def fixed_vertex_check(g: LoopedGraph, loop: ElementId, d: int, rs: Optional[RandomSource] = None,
                       trials: int = DEFAULT_TRIALS, bound: int = 10**6, attempts: int = 5) -> bool:
    """Does every infinitesimal motion vanish at the vertex carrying ``loop``?

    Requires rank(G) = rank(G - loop) generically; raises HypothesisError
    otherwise.  The motion space is computed exactly over Q at a random
    integer point whose rank matches the generic estimate.
    """
    rs = rs if rs is not None else RandomSource(0)
    if not isinstance(loop, Loop) or not g.has_element(loop):
        raise GraphError(f"{loop} is not a loop of the graph")
    full = generic_rank(g, d, rs, trials)
    if generic_rank(g.without(loop), d, rs, trials) != full:
        raise HypothesisError("removing the loop lowers the generic rank")
    v = g.loop_vertex[loop.id]
    for _ in range(attempts):
        real = random_integer_realisation(g, d, rs, bound)
        rm = build_matrix(g, real)
        if rank(rm.matrix) != full:
            continue
        return all(all(x == 0 for x in m.at(v)) for m in motion_space(g, real))
    raise RuntimeError("no rank-generic integer point found")

