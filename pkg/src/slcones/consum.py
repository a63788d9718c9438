"""Feasibility and balance for multiple connected-sum constructions.

Component-crossing intersection points form a directed multigraph on the
q components: an edge runs from the component containing the positive
sheet to the one containing the negative sheet, weighted by the m-th
power of the point's angle invariant.  Desingularizing all points at
once is possible iff positive areas A_i can balance the weighted flow at
every component, which holds iff every vertex bipartition is crossed in
both directions — equivalently (on a connected graph) iff the digraph is
strongly connected.

All feasibility and balance arithmetic here is exact over the rationals;
floating point enters only through the phase-region classifier, whose
wall tolerance is :data:`WALL_TOL`.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DegeneratePhaseError, InfeasibleGraphError, InputError, PreconditionError

__all__ = [
    "Edge",
    "IntersectionGraph",
    "BalanceSolution",
    "PhaseFamilyQuery",
    "PhaseRegionResult",
    "ModuliDim",
    "feasible",
    "bipartition_oracle",
    "solve_areas",
    "check_balance",
    "moduli_dim_relation",
    "phase_region",
    "family_balance_region",
]

#: angle-difference tolerance under which phase_region reports the wall
WALL_TOL = 1e-12
#: relative tolerance for checking a supplied area vector in family_balance_region
PAIRING_TOL = 1e-9
_MAX_ORACLE_Q = 20


def _as_fraction(x, what: str) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"{what} must be a rational number, got {x!r}")
    try:
        f = Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{what} must be a rational number, got {x!r}") from exc
    return f


@dataclass(frozen=True)
class Edge:
    """Directed weighted edge: tail = component of the positive sheet,
    head = component of the negative sheet, weight = psi^m > 0 exact."""

    tail: int
    head: int
    weight: Fraction

    def __init__(self, tail: int, head: int, weight):
        w = _as_fraction(weight, "edge weight")
        if w <= 0:
            raise InputError(f"edge weight must be positive, got {w}")
        object.__setattr__(self, "tail", int(tail))
        object.__setattr__(self, "head", int(head))
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class IntersectionGraph:
    """Directed multigraph on components 1..q; self-loops allowed."""

    q: int
    edges: tuple

    def __init__(self, q: int, edges: Sequence):
        q = int(q)
        if q < 1:
            raise InputError(f"need at least one component, got q = {q}")
        norm = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            if not (1 <= e.tail <= q and 1 <= e.head <= q):
                raise InputError(
                    f"edge endpoints must lie in 1..{q}, got ({e.tail}, {e.head})"
                )
            norm.append(e)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class BalanceSolution:
    """Exact positive areas, one per intersection point."""

    A: tuple

    def __init__(self, A):
        vals = tuple(_as_fraction(x, "area") for x in A)
        if any(v <= 0 for v in vals):
            raise InputError(f"areas must be positive, got {vals}")
        object.__setattr__(self, "A", vals)


def _adjacency(g: IntersectionGraph, directed: bool) -> csr_matrix:
    rows = [e.tail - 1 for e in g.edges]
    cols = [e.head - 1 for e in g.edges]
    data = np.ones(len(rows))
    mat = csr_matrix((data, (rows, cols)), shape=(g.q, g.q))
    return mat if directed else mat + mat.T


def _require_connected(g: IntersectionGraph) -> None:
    ncomp, _ = connected_components(_adjacency(g, directed=False), directed=False)
    if ncomp != 1:
        raise PreconditionError(
            f"underlying undirected graph must be connected, found {ncomp} pieces"
        )


def feasible(g: IntersectionGraph) -> bool:
    """True iff every bipartition of the components is crossed by edges
    in both directions; on a connected graph this is strong connectivity
    of the directed multigraph."""
    _require_connected(g)
    if g.q == 1:
        return True
    ncomp, _ = connected_components(
        _adjacency(g, directed=True), directed=True, connection="strong"
    )
    return ncomp == 1


def bipartition_oracle(g: IntersectionGraph) -> bool:
    """Literal exhaustive evaluation of the bipartition criterion
    (2^q subsets); the reference oracle for :func:`feasible`."""
    _require_connected(g)
    if g.q > _MAX_ORACLE_Q:
        raise InputError(f"oracle limited to q <= {_MAX_ORACLE_Q}, got q = {g.q}")
    for mask in range(1, 2**g.q - 1):
        fwd = bwd = False
        for e in g.edges:
            tail_in = bool(mask >> (e.tail - 1) & 1)
            head_in = bool(mask >> (e.head - 1) & 1)
            if tail_in and not head_in:
                fwd = True
            elif head_in and not tail_in:
                bwd = True
        if not (fwd and bwd):
            return False
    return True


def _directed_path_edges(g: IntersectionGraph, start: int, goal: int) -> list:
    """Edge indices of some directed path start -> goal (BFS)."""
    if start == goal:
        return []
    out = [[] for _ in range(g.q + 1)]
    for idx, e in enumerate(g.edges):
        out[e.tail].append((idx, e.head))
    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for idx, w in out[v]:
            if w not in prev:
                prev[w] = (v, idx)
                if w == goal:
                    path = []
                    while prev[w] is not None:
                        v, idx = prev[w]
                        path.append(idx)
                        w = v
                    return path[::-1]
                queue.append(w)
    raise InfeasibleGraphError(f"no directed path from {start} to {goal}")


def solve_areas(g: IntersectionGraph) -> BalanceSolution:
    """Exact positive areas balancing the weighted flow at every
    component, normalized so that min_i A_i w_i = 1.

    Every edge is closed into a directed cycle through a return path
    (one exists by strong connectivity); summing the unit circulations
    of these n cycles gives positive integer flows f_i balanced at every
    vertex, and A_i = f_i / w_i.
    """
    if not feasible(g):
        raise InfeasibleGraphError(
            "graph is not strongly connected: no positive balanced areas exist"
        )
    if g.n == 0:
        return BalanceSolution(())
    flows = [0] * g.n
    for idx, e in enumerate(g.edges):
        flows[idx] += 1
        for j in _directed_path_edges(g, e.head, e.tail):
            flows[j] += 1
    lo = min(flows)
    areas = [Fraction(f, lo) / e.weight for f, e in zip(flows, g.edges)]
    sol = BalanceSolution(areas)
    assert check_balance(g, sol)
    return sol


def check_balance(g: IntersectionGraph, sol: BalanceSolution) -> bool:
    """Exact check of the weighted flow balance at every component."""
    if len(sol.A) != g.n:
        raise InputError(f"expected {g.n} areas, got {len(sol.A)}")
    for k in range(1, g.q + 1):
        net = Fraction(0)
        for e, a in zip(g.edges, sol.A):
            if e.tail == k:
                net += e.weight * a
            if e.head == k:
                net -= e.weight * a
        if net != 0:
            return False
    return True


@dataclass(frozen=True)
class ModuliDim:
    """First Betti number of the connected sum and the index-one flag."""

    b1: int
    index_one: bool


def moduli_dim_relation(n: int, q: int, b1X: int) -> ModuliDim:
    """b1 of the n-fold connected sum of q components: n + 1 - q + b1X.

    Each sum either joins two pieces (dropping b0 by one) or adds a
    handle (raising b1 by one); n = q marks the index-one boundary case
    where the glued moduli space has exactly one extra dimension.
    """
    n, q, b1X = int(n), int(q), int(b1X)
    if q < 1:
        raise InputError(f"need q >= 1 components, got {q}")
    if n < q - 1:
        raise InputError(
            f"{n} sums cannot connect {q} components: need n >= q - 1"
        )
    if b1X < 0:
        raise InputError(f"negative Betti number b1X = {b1X}")
    return ModuliDim(n + 1 - q + b1X, n == q)


@dataclass(frozen=True)
class PhaseFamilyQuery:
    """Phase data of a two-component family: [class]·[X_k] = R_k e^{i theta_k}."""

    R1: float
    R2: float
    theta1: float
    theta2: float
    psi: float
    m: int

    def __init__(self, R1, R2, theta1, theta2, psi, m):
        R1, R2, psi = float(R1), float(R2), float(psi)
        if R1 <= 0 or R2 <= 0:
            raise InputError(f"component magnitudes must be positive, got {R1}, {R2}")
        if psi <= 0:
            raise InputError(f"angle invariant must be positive, got {psi}")
        m = int(m)
        if m < 1:
            raise InputError(f"dimension must be >= 1, got {m}")
        object.__setattr__(self, "R1", R1)
        object.__setattr__(self, "R2", R2)
        object.__setattr__(self, "theta1", float(theta1))
        object.__setattr__(self, "theta2", float(theta2))
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class PhaseRegionResult:
    """Which side of the wall the total phase lies on, and the neck
    scale t in the positive region."""

    region: str  # "positive" | "negative" | "wall"
    t: Optional[float]


def phase_region(qr: PhaseFamilyQuery) -> PhaseRegionResult:
    """Classify theta relative to (theta1, theta2) for the summed phase
    R e^{i theta} = R1 e^{i theta1} + R2 e^{i theta2}.

    The positive region has theta strictly between theta2 and theta1;
    there the unique neck scale is t = (R1 sin(theta1 - theta))^(1/m) / psi.
    Angle differences within :data:`WALL_TOL` count as the wall.
    """
    z = qr.R1 * np.exp(1j * qr.theta1) + qr.R2 * np.exp(1j * qr.theta2)
    if abs(z) <= WALL_TOL * (qr.R1 + qr.R2):
        raise DegeneratePhaseError(
            "total phase class vanishes (antipodal components)"
        )
    theta = float(np.angle(z))
    s1 = math.sin(qr.theta1 - theta)
    if abs(s1) <= WALL_TOL:
        return PhaseRegionResult("wall", None)
    if s1 > 0:
        t = (qr.R1 * s1 / qr.psi**qr.m) ** (1.0 / qr.m)
        return PhaseRegionResult("positive", t)
    return PhaseRegionResult("negative", None)


def _rref(matrix: list, ncols: int):
    """In-place reduced row echelon form over Fraction; returns the list
    of pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = matrix[r][c]
        matrix[r] = [x / inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return pivots


def _strictly_feasible(ineqs: list, nvars: int) -> bool:
    """Fourier-Motzkin elimination for a system of strict inequalities
    a·x + b > 0 over the rationals."""
    for v in range(nvars - 1, -1, -1):
        pos = [q for q in ineqs if q[v] > 0]
        neg = [q for q in ineqs if q[v] < 0]
        rest = [q for q in ineqs if q[v] == 0]
        combined = []
        for p in pos:
            for ng in neg:
                # scale to cancel variable v; strictness is preserved
                row = [p[i] / p[v] - ng[i] / ng[v] for i in range(nvars + 1)]
                combined.append(row)
        ineqs = rest + combined
    return all(q[nvars] > 0 for q in ineqs)


def family_balance_region(
    g: IntersectionGraph,
    pairings: Sequence[float],
    t: float,
    A: Optional[BalanceSolution] = None,
    m: int = 3,
) -> bool:
    """Whether the per-component pairing values match the scaled flow
    imbalance t^m * (outflow_k - inflow_k) of some (or the given)
    positive area vector.

    With ``A`` supplied the q equations are checked directly to relative
    tolerance :data:`PAIRING_TOL`.  Without it, the pairings are
    rationalized exactly and the existence of a strictly positive exact
    solution is decided by elimination — a decision independent of both
    ``t`` and ``m``, which only rescale the solution.
    """
    if len(pairings) != g.q:
        raise InputError(f"expected {g.q} pairing values, got {len(pairings)}")
    t = float(t)
    if not t > 0:
        raise InputError(f"scale t must be positive, got {t}")
    m_exp = int(m)
    if m_exp < 1:
        raise InputError(f"dimension must be >= 1, got {m_exp}")
    if A is not None:
        if len(A.A) != g.n:
            raise InputError(f"expected {g.n} areas, got {len(A.A)}")
        scale = float(t) ** m_exp
        for k in range(1, g.q + 1):
            net = Fraction(0)
            for e, a in zip(g.edges, A.A):
                if e.tail == k:
                    net += e.weight * a
                if e.head == k:
                    net -= e.weight * a
            target = scale * float(net)
            bound = PAIRING_TOL * max(1.0, abs(target), abs(pairings[k - 1]))
            if abs(pairings[k - 1] - target) > bound:
                return False
        return True

    tm = Fraction(t) ** m_exp
    rhs = [Fraction(float(p)) / tm for p in pairings]
    if sum(rhs) != 0:
        return False
    rows = []
    for k in range(1, g.q + 1):
        row = [Fraction(0)] * (g.n + 1)
        for idx, e in enumerate(g.edges):
            if e.tail == k:
                row[idx] += e.weight
            if e.head == k:
                row[idx] -= e.weight
        row[g.n] = rhs[k - 1]
        rows.append(row)
    pivots = _rref(rows, g.n)
    for row in rows:
        if all(x == 0 for x in row[: g.n]) and row[g.n] != 0:
            return False
    # express pivot variables affinely in the free ones, then demand
    # strict positivity of every variable
    free = [c for c in range(g.n) if c not in pivots]
    ineqs = []
    for r, c in enumerate(pivots):
        # A_c = rows[r][n] - sum_{f} rows[r][f] A_f > 0
        q = [Fraction(0)] * (len(free) + 1)
        for fi, f in enumerate(free):
            q[fi] = -rows[r][f]
        q[len(free)] = rows[r][g.n]
        ineqs.append(q)
    for fi in range(len(free)):
        q = [Fraction(0)] * (len(free) + 1)
        q[fi] = Fraction(1)
        ineqs.append(q)
    return _strictly_feasible(ineqs, len(free))
