"""3-SAT gadgets: CNF formulas as systems of tropical linear polynomials in one x.

Variable ``u_i`` is encoded by indeterminates ``y_i`` (for ``u_i``) and
``z_i`` (for ``not u_i``); the monomial ``0`` stands for true and ``x`` for
false.  Each clause ``j`` adds two auxiliary indeterminates ``v_j``, ``w_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import Monomial, NPPoly
from .geom import reduce_poly
from .ties import SysPoly, Term, VerifyResult, term_pieces, find_violation, verify_polys

ZERO = NPPoly([Monomial((Fraction(0),), Fraction(0))], 1)
X = NPPoly([Monomial((Fraction(1),), Fraction(0))], 1)


class CNFError(ValueError):
    pass


@dataclass(frozen=True)
class CNF3:
    """Clauses are triples of non-zero signed 1-based literals (DIMACS style)."""

    num_vars: int
    clauses: Tuple[Tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise CNFError("num_vars must be non-negative")
        for j, cl in enumerate(self.clauses):
            if len(cl) != 3:
                raise CNFError(f"clause {j + 1} has {len(cl)} literals, expected 3")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise CNFError(f"clause {j + 1}: literal {lit} out of range 1..{self.num_vars}")

    @classmethod
    def make(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> "CNF3":
        return cls(num_vars, tuple(tuple(int(l) for l in cl) for cl in clauses))  # type: ignore[misc]

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_vars:
            raise CNFError(f"assignment has {len(assignment)} values, expected {self.num_vars}")
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in cl) for cl in self.clauses)

    def is_satisfiable(self) -> bool:
        return any(self.satisfied_by(a) for a in itertools.product((True, False), repeat=self.num_vars))


def parse_dimacs(text: str) -> CNF3:
    """Read a DIMACS ``p cnf`` file whose clauses have exactly three literals."""
    num_vars = None
    lits: List[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CNFError(f"line {lineno}: malformed header {line!r}")
            num_vars = int(parts[2])
            continue
        if num_vars is None:
            raise CNFError(f"line {lineno}: clause before 'p cnf' header")
        try:
            lits.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise CNFError(f"line {lineno}: {exc}") from None
    if num_vars is None:
        raise CNFError("missing 'p cnf' header")
    clauses, cur = [], []
    for l in lits:
        if l == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(l)
    if cur:
        raise CNFError("last clause is not terminated by 0")
    return CNF3.make(num_vars, clauses)


@dataclass
class TropicalSystem:
    indeterminates: List[str]
    polys: List[SysPoly]
    x_arity: int = 1
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        declared = set(self.indeterminates)
        for k, p in enumerate(self.polys):
            if p.arity != self.x_arity:
                raise ValueError(f"polynomial {k} has x-arity {p.arity}, expected {self.x_arity}")
            extra = set(p.indeterminates()) - declared
            if extra:
                raise ValueError(f"polynomial {k} uses undeclared {sorted(extra)}")


def _lit_name(lit: int) -> str:
    return f"y{lit}" if lit > 0 else f"z{-lit}"


def _t(coeff: NPPoly, *names: str) -> Term:
    return Term(coeff, tuple((nm, Fraction(1)) for nm in names))


def reduce_3sat(cnf: CNF3) -> TropicalSystem:
    names: List[str] = []
    polys: List[SysPoly] = []
    labels: List[str] = []
    for i in range(1, cnf.num_vars + 1):
        names += [f"y{i}", f"z{i}"]
        polys.append(SysPoly([_t(ZERO, f"y{i}", f"z{i}"), _t(X)], 1))
        labels.append(f"var {i}")
    for j, cl in enumerate(cnf.clauses, 1):
        v, w = f"v{j}", f"w{j}"
        names += [v, w]
        polys.append(SysPoly([_t(ZERO, _lit_name(l)) for l in cl] + [_t(ZERO, v)], 1))
        polys.append(SysPoly([_t(ZERO, v), _t(X), _t(ZERO, w)], 1))
        polys.append(SysPoly([_t(ZERO, w), _t(X), _t(ZERO)], 1))
        labels += [f"clause {j}", f"clause {j} link", f"clause {j} anchor"]
    return TropicalSystem(names, polys, 1, labels)


def assignment_to_resolution(cnf: CNF3, assignment: Sequence[bool]) -> Dict[str, NPPoly]:
    """The canonical certificate of a satisfying assignment.

    ``v_j`` is the min of the clause's literal values.  The constant 0 would
    not do when a literal is false: for ``x < 0`` that literal alone would
    attain the minimum of the clause polynomial.
    """
    if not cnf.satisfied_by(assignment):
        raise CNFError("assignment does not satisfy the formula")
    out: Dict[str, NPPoly] = {}
    for i, val in enumerate(assignment, 1):
        out[f"y{i}"], out[f"z{i}"] = (ZERO, X) if val else (X, ZERO)
    for j, cl in enumerate(cnf.clauses, 1):
        out[f"v{j}"] = reduce_poly(sum((out[_lit_name(l)] for l in cl[1:]), out[_lit_name(cl[0])]))
        out[f"w{j}"] = X + ZERO
    return out


def verify_system_resolution(system: TropicalSystem, values: Mapping[str, NPPoly],
                             method: str = "lp") -> VerifyResult:
    missing = [nm for nm in system.indeterminates if nm not in values]
    if missing:
        raise KeyError(f"no value for {', '.join(missing)}")
    return verify_polys(system.polys, values, method)


def extract_assignment(values: Mapping[str, NPPoly]) -> List[bool]:
    out = []
    i = 1
    while f"y{i}" in values:
        y = reduce_poly(values[f"y{i}"])
        if y == ZERO:
            out.append(True)
        elif y == X:
            out.append(False)
        else:
            raise ValueError(f"y{i} = {y} is neither 0 nor x: not a canonical certificate")
        i += 1
    return out


def certificate_candidates(system: TropicalSystem, degree_bound: Fraction = Fraction(1),
                           support_bound: int = 2) -> List[NPPoly]:
    """Univariate values tried for each indeterminate by :func:`brute_force_system`.

    Monomials are taken from the pure-x terms of the system, keeping
    exponents in ``[0, degree_bound]`` and non-negative coefficients, and
    the constant 0 is always included.  Values are min-combinations of at
    most ``support_bound`` of them.
    """
    monos = {Monomial((Fraction(0),), Fraction(0))}
    for p in system.polys:
        for t in p.terms:
            if not t.powers:
                for m in t.coeff.monomials:
                    if 0 <= m.exps[0] <= degree_bound and m.coeff >= 0:
                        monos.add(m)
    monos_sorted = sorted(monos)
    out = []
    for size in range(1, support_bound + 1):
        for sub in itertools.combinations(monos_sorted, size):
            out.append(NPPoly(sub, 1))
    return out


def brute_force_system(system: TropicalSystem, degree_bound: Fraction = Fraction(1),
                       support_bound: int = 2) -> Optional[Dict[str, NPPoly]]:
    """First verified certificate in lexicographic order, or ``None``.

    Backtracking over the indeterminates in declaration order; a polynomial
    is checked as soon as all its indeterminates have values.
    """
    names = system.indeterminates
    if not names:
        return {} if verify_polys(system.polys, {}) else None
    cands = certificate_candidates(system, Fraction(degree_bound), support_bound)
    pos = {nm: k for k, nm in enumerate(names)}
    ready: List[List[SysPoly]] = [[] for _ in names]
    for p in system.polys:
        used = p.indeterminates()
        if not used:
            if find_violation(term_pieces(p, {}), 1) is not None:
                return None
            continue
        ready[max(pos[nm] for nm in used)].append(p)
    cache: Dict[Tuple, bool] = {}

    def ok(p: SysPoly, values: Dict[str, NPPoly]) -> bool:
        key = (p, tuple(values[nm] for nm in p.indeterminates()))
        if key not in cache:
            cache[key] = find_violation(term_pieces(p, values), 1) is None
        return cache[key]

    values: Dict[str, NPPoly] = {}

    def search(k: int) -> bool:
        if k == len(names):
            return True
        for c in cands:
            values[names[k]] = c
            if all(ok(p, values) for p in ready[k]) and search(k + 1):
                return True
        del values[names[k]]
        return False

    return {nm: reduce_poly(values[nm]) for nm in names} if search(0) else None
