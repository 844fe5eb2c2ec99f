"""Small dense linear programming.

Two-phase tableau simplex with Bland's rule. Programs are stated as

    minimize  c . v   subject to  A v <= b,   v free

which is the shape every geometric query in this package reduces to.
Instances are tiny (a few dozen variables), so robustness is preferred
over speed: Bland's rule rules out cycling on degenerate vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

PIVOT_TOL = 1e-9
REFRESH_EVERY = 8
COST_TOL = 1e-9
FEAS_TOL = 1e-9

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPError(ValueError):
    """Malformed linear program (shape mismatch or non-finite data)."""


@dataclass(frozen=True)
class LinearProgram:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        n = c.shape[0]
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, n)
        b = np.atleast_1d(np.asarray(self.b, dtype=float)).reshape(-1)
        if A.ndim != 2 or A.shape[1] != n:
            raise LPError(f"constraint rows must have length {n}, got shape {A.shape}")
        if A.shape[0] != b.shape[0]:
            raise LPError(f"{A.shape[0]} constraint rows but {b.shape[0]} bounds")
        for name, arr in (("objective", c), ("constraint matrix", A), ("bounds", b)):
            if not np.all(np.isfinite(arr)):
                raise LPError(f"non-finite entry in {name}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[float] = None
    x: Optional[np.ndarray] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: np.ndarray, basis: list, r: int, j: int) -> None:
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    nz = np.nonzero(np.abs(col) > 0.0)[0]
    if nz.size:
        T[nz] -= np.outer(col[nz], T[r])
    basis[r] = j


def _refresh(T: np.ndarray, T0: np.ndarray, basis: list) -> None:
    """Recompute the tableau for ``basis`` from the starting tableau ``T0``.

    Long pivot sequences accumulate rounding error; rebuilding from the
    original rows keeps the basic solution and the reduced costs honest.
    """
    m = T.shape[0] - 1
    B = T0[:m][:, basis]
    try:
        rows = np.linalg.solve(B, T0[:m])
    except np.linalg.LinAlgError:
        return
    T[:m] = rows
    T[-1] = T0[-1] - T0[-1, basis] @ rows
    for r, j in enumerate(basis):
        T[:m, j] = 0.0
        T[r, j] = 1.0
        T[-1, j] = 0.0


def _bland(T: np.ndarray, basis: list, ncols: int, allowed: np.ndarray) -> str:
    """Run primal simplex on tableau T (last row = reduced costs, last col = rhs).

    Only columns flagged in ``allowed`` may enter the basis.  The tableau is
    rebuilt from its starting state every few pivots and before any verdict.
    """
    m = T.shape[0] - 1
    T0 = T.copy()
    max_iter = 50 * (m + ncols) + 1000
    dirty = 0
    for _ in range(max_iter):
        if dirty >= REFRESH_EVERY:
            _refresh(T, T0, basis)
            dirty = 0
        cost = T[-1, :ncols]
        cand = np.nonzero((cost < -COST_TOL) & allowed)[0]
        if cand.size == 0:
            if dirty:
                _refresh(T, T0, basis)
                dirty = 0
                continue
            return OPTIMAL
        j = int(cand[0])
        colj = T[:m, j]
        rows = np.nonzero(colj > PIVOT_TOL * max(1.0, float(np.abs(colj).max())))[0]
        if rows.size == 0:
            if dirty:
                _refresh(T, T0, basis)
                dirty = 0
                continue
            return UNBOUNDED
        ratios = np.maximum(T[rows, -1], 0.0) / colj[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        # degenerate vertices produce many ties; tiny pivots among them make
        # the basis ill-conditioned, so only well-sized ones stay eligible
        piv = colj[ties]
        ties = ties[piv >= 1e-3 * piv.max()]
        # Bland: among tied rows leave the smallest basic variable index
        r = int(min(ties, key=lambda i: basis[i]))
        _pivot(T, basis, r, j)
        dirty += 1
    raise RuntimeError("simplex iteration limit reached")


def solve(program: LinearProgram) -> LPResult:
    """Minimize ``c.v`` subject to ``A v <= b`` over free ``v``."""
    c, A, b = program.c, program.A, program.b
    m, n = A.shape
    if m == 0:
        if np.any(c != 0.0):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, 0.0, np.zeros(n))

    # v = p - q with p, q >= 0; slack s >= 0; artificial a on rows with b < 0
    neg = b < 0
    sign = np.where(neg, -1.0, 1.0)
    n_art = int(neg.sum())
    ncols = 2 * n + m + n_art
    T = np.zeros((m + 1, ncols + 1))
    T[:m, :n] = A * sign[:, None]
    T[:m, n:2 * n] = -A * sign[:, None]
    T[:m, 2 * n:2 * n + m] = np.diag(sign)
    T[:m, -1] = b * sign
    basis = [0] * m
    art_rows = np.nonzero(neg)[0]
    for k, i in enumerate(art_rows):
        T[i, 2 * n + m + k] = 1.0
        basis[i] = 2 * n + m + k
    for i in np.nonzero(~neg)[0]:
        basis[i] = 2 * n + i

    real = np.zeros(ncols, dtype=bool)
    real[:2 * n + m] = True

    if n_art:
        # phase 1: minimize the sum of artificials
        T[-1, 2 * n + m:ncols] = 1.0
        for i in art_rows:
            T[-1] -= T[i]
        _bland(T, basis, ncols, np.ones(ncols, dtype=bool))
        scale = 1.0 + float(np.abs(b).max())
        if -T[-1, -1] > FEAS_TOL * scale:
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis
        for r in range(m):
            if basis[r] >= 2 * n + m:
                row = T[r, :2 * n + m]
                cand = np.nonzero(np.abs(row) > PIVOT_TOL)[0]
                if cand.size:
                    _pivot(T, basis, r, int(cand[0]))
        keep = [r for r in range(m) if basis[r] < 2 * n + m]
        if len(keep) < m:
            T = np.vstack([T[keep], T[-1:]])
            basis = [basis[r] for r in keep]
            m = len(keep)

    # phase 2
    T[-1, :] = 0.0
    T[-1, :n] = c
    T[-1, n:2 * n] = -c
    for r in range(m):
        j = basis[r]
        if T[-1, j] != 0.0:
            T[-1] -= T[-1, j] * T[r]
    status = _bland(T, basis, ncols, real)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    z = np.zeros(ncols)
    for r in range(m):
        z[basis[r]] = T[r, -1]
    x = z[:n] - z[n:2 * n]
    return LPResult(OPTIMAL, float(c @ x), x)


def linprog(c, A, b) -> LPResult:
    """Shorthand for ``solve(LinearProgram(c, A, b))``."""
    return solve(LinearProgram(c, A, b))


def feasible(A, b, n: Optional[int] = None) -> tuple[bool, Optional[np.ndarray]]:
    """Feasibility of ``A v <= b``; returns (flag, witness).

    An empty constraint set is feasible with the origin as witness.
    """
    A = np.asarray(A, dtype=float)
    if n is None:
        n = A.shape[1] if A.ndim == 2 and A.size else 0
    if A.size == 0:
        return True, np.zeros(n)
    res = solve(LinearProgram(np.zeros(n), A, b))
    if res.status != OPTIMAL:
        return False, None
    return True, res.x


def max_violation(A, b, x: Sequence[float]) -> float:
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0.0
    return float(max(0.0, np.max(A @ np.asarray(x, dtype=float) - np.asarray(b, dtype=float))))
