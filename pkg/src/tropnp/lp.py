"""Exact rational linear programming.

Every LP in this package has very few variables (the ambient dimension,
at most four or five) and possibly many constraints.  We therefore run the
simplex method on the *dual* problem, whose tableau has one row per primal
variable, and read the primal solution off the simplex multipliers.

Primal (free ``x``)::

    max  c.x   s.t.  A_k.x <= b_k  (inequalities),  A_e.x = b_e  (equalities)

Dual::

    min  b.lam  s.t.  sum_k lam_k A_k = c,  lam_k >= 0 (lam_e free)

Both phases use Bland's rule, so the method terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import AffineFunc, DimensionError, Point

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

GE, EQ, GT = "ge", "eq", "gt"
_RELATIONS = {GE: ">= 0", EQ: "= 0", GT: "> 0"}


@dataclass(frozen=True)
class LinConstraint:
    """``func(x) >= 0``, ``= 0`` or ``> 0`` depending on ``relation``."""

    func: AffineFunc
    relation: str = GE

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def dim(self) -> int:
        return self.func.dim

    def holds(self, point: Sequence[Fraction]) -> bool:
        v = self.func(point)
        if self.relation == GE:
            return v >= 0
        if self.relation == EQ:
            return v == 0
        return v > 0

    def __str__(self) -> str:
        return f"{self.func} {_RELATIONS[self.relation]}"


def ge(f: AffineFunc) -> LinConstraint:
    return LinConstraint(f, GE)


def eq(f: AffineFunc) -> LinConstraint:
    return LinConstraint(f, EQ)


def gt(f: AffineFunc) -> LinConstraint:
    return LinConstraint(f, GT)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Optional[Fraction] = None
    witness: Optional[Point] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _to_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(int(v.numerator), int(v.denominator))


class _Tableau:
    """Standard form ``min cost.lam, M lam = rhs, lam >= 0`` with artificials.

    Columns ``0..N-1`` are structural, ``N..N+m-1`` artificial.  ``rows[i]``
    holds the constraint row followed by its right-hand side; ``obj`` holds
    reduced costs followed by minus the objective value.
    """

    def __init__(self, M: List[List], rhs: List, cost: List):
        m, N = len(M), len(cost)
        self.m, self.N = m, N
        self.sign = []
        self.rows = []
        for i in range(m):
            s = -1 if rhs[i] < 0 else 1
            self.sign.append(s)
            row = [s * v for v in M[i]] + [_num(0)] * m + [s * rhs[i]]
            row[N + i] = _num(1)
            self.rows.append(row)
        self.basis = [N + i for i in range(m)]
        self.cost = list(cost)

    def _pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(row, prow)]
        f = self.obj[c]
        if f:
            self.obj = [a - f * b for a, b in zip(self.obj, prow)]
        self.basis[r] = c

    def _run(self, allowed: int) -> str:
        """Minimize with Bland's rule over entering columns ``< allowed``."""
        while True:
            obj = self.obj
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self._pivot(best[1], enter)

    def phase1(self) -> bool:
        width = self.N + self.m
        # cost 1 on artificials, all of which start basic
        obj = [_num(0)] * (width + 1)
        for i in range(self.m):
            obj[self.N + i] = _num(1)
        for row in self.rows:
            obj = [a - b for a, b in zip(obj, row)]
        self.obj = obj
        self._run(width)
        if self.obj[-1] != 0:  # obj[-1] holds minus the phase-1 optimum
            return False
        # drive zero-level artificials out of the basis where possible
        for r in range(self.m):
            if self.basis[r] >= self.N:
                row = self.rows[r]
                c = next((j for j in range(self.N) if row[j] != 0), None)
                if c is not None:
                    self._pivot(r, c)
        return True

    def phase2(self) -> str:
        width = self.N + self.m
        cost = self.cost + [_num(0)] * self.m
        obj = cost + [_num(0)]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                obj = [a - cb * b for a, b in zip(obj, row)]
        self.obj = obj
        return self._run(self.N)

    def multipliers(self) -> List:
        # reduced cost of artificial i is -y'_i; undo the row sign flip
        return [-self.sign[i] * self.obj[self.N + i] for i in range(self.m)]


def _dual_solve(rows: List[Tuple[List, object, bool]], c: List) -> Tuple[str, Optional[List]]:
    """Solve the dual of ``max c.x`` over ``rows`` = (a, b, is_equality) meaning
    ``a.x <= b`` or ``a.x = b``.  Returns the dual status and the multipliers."""
    n = len(c)
    cols, cost = [], []
    for a, b, is_eq in rows:
        cols.append(a)
        cost.append(b)
        if is_eq:
            cols.append([-v for v in a])
            cost.append(-b)
    M = [[col[j] for col in cols] for j in range(n)]
    t = _Tableau(M, list(c), cost)
    if not t.phase1():
        return "infeasible", None
    status = t.phase2()
    if status == "unbounded":
        return "unbounded", None
    return "optimal", t.multipliers()


def lp_solve(constraints: Sequence[LinConstraint], objective: AffineFunc,
             sense: str = "max") -> LPResult:
    """Optimize ``objective`` over the non-strict ``constraints`` exactly.

    On ``optimal`` the witness is an optimal point; on ``unbounded`` it is a
    feasible point.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    n = objective.dim
    rows = []
    for con in constraints:
        if con.dim != n:
            raise DimensionError(f"constraint dimension {con.dim} != objective dimension {n}")
        if con.relation == GT:
            raise ValueError("lp_solve takes non-strict constraints only")
        f = con.func
        # f.const + g.x >= 0  <=>  (-g).x <= f.const
        a = [_num(-v.numerator, v.denominator) for v in f.gradient]
        b = _num(f.constant.numerator, f.constant.denominator)
        rows.append((a, b, con.relation == EQ))
    sgn = 1 if sense == "max" else -1
    c = [_num(sgn * v.numerator, v.denominator) for v in objective.gradient]

    status, y = _dual_solve(rows, c)
    if status == "optimal":
        x = tuple(_to_fraction(v) for v in y)
        return LPResult("optimal", objective(x), x)
    if status == "unbounded":
        return LPResult("infeasible")
    # dual infeasible: primal is infeasible or unbounded; decide feasibility
    status0, y0 = _dual_solve(rows, [_num(0)] * n)
    if status0 != "optimal":
        return LPResult("infeasible")
    return LPResult("unbounded", None, tuple(_to_fraction(v) for v in y0))


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Optional[Point] = None

    def __bool__(self) -> bool:
        return self.feasible


def relative_interior_feasible(constraints: Sequence[LinConstraint],
                               dim: Optional[int] = None) -> Feasibility:
    """Decide whether the mixed system (``>= 0``, ``= 0``, ``> 0``) has a solution.

    Each strict ``f > 0`` becomes ``f - t >= 0``; we maximize the slack ``t``
    (capped at 1) and the system is feasible iff the optimum is positive.
    The witness satisfies every strict constraint strictly.
    """
    if dim is None:
        if not constraints:
            raise ValueError("dimension is required for an empty system")
        dim = constraints[0].dim
    if not constraints:
        return Feasibility(True, (Fraction(0),) * dim)
    lifted = []
    zero = Fraction(0)
    for con in constraints:
        if con.dim != dim:
            raise DimensionError(f"constraint dimension {con.dim} != {dim}")
        f = con.func
        if con.relation == GT:
            lifted.append(ge(AffineFunc(f.constant, f.gradient + (Fraction(-1),))))
        else:
            lifted.append(LinConstraint(AffineFunc(f.constant, f.gradient + (zero,)), con.relation))
    lifted.append(ge(AffineFunc(Fraction(1), (zero,) * dim + (Fraction(-1),))))
    res = lp_solve(lifted, AffineFunc(zero, (zero,) * dim + (Fraction(1),)), "max")
    if res.status != "optimal" or res.value <= 0:
        return Feasibility(False)
    return Feasibility(True, res.witness[:dim])


# small exact linear algebra ----------------------------------------------

def row_echelon(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Reduced row echelon form (nonzero rows only)."""
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    out: List[List[Fraction]] = []
    col = 0
    while mat and col < ncols:
        piv = next((r for r in mat if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        mat.remove(piv)
        piv = [v / piv[col] for v in piv]
        mat = [[a - r[col] * b for a, b in zip(r, piv)] for r in mat]
        out = [[a - r[col] * b for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        col += 1
    return out


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(row_echelon(rows))


def nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> List[Tuple[Fraction, ...]]:
    """Basis of ``{d : r.d = 0 for every row r}`` in ``Q^n``."""
    ech = row_echelon(rows)
    pivots = []
    for r in ech:
        pivots.append(next(j for j, v in enumerate(r) if v != 0))
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fj in free:
        d = [Fraction(0)] * n
        d[fj] = Fraction(1)
        for r, pj in zip(ech, pivots):
            d[pj] = -r[fj]
        basis.append(tuple(d))
    return basis


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Point]:
    """Unique solution of ``rows . x = rhs`` or ``None``."""
    n = len(rows[0]) if rows else 0
    ech = row_echelon([list(r) + [b] for r, b in zip(rows, rhs)])
    if any(all(v == 0 for v in r[:-1]) for r in ech) or len(ech) != n:
        return None
    x = [Fraction(0)] * n
    for r in ech:
        j = next(k for k, v in enumerate(r[:-1]) if v != 0)
        x[j] = r[-1]
    return tuple(x)
