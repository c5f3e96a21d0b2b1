"""Built-in curve grids for sweeps and the acceptance tests.

A cell (p0, f, p, e) expands to the first few R, in coefficient enumeration
order, whose V_R has a maximal isotropic subspace defined over F_q (and, for
p0 = 2, whose A_R is rational as well).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .addpoly import AdditivePolynomial
from .errors import AssumptionError
from .gf import build_field
from .heis import Heisenberg, maximal_isotropic_rational
from .lfunc import CurveSpec, make_spec


@dataclass(frozen=True)
class Cell:
    p0: int
    f: int
    p: int
    e: int
    count: int = 2


# named curves that every sweep includes
RUNNING = dict(p0=3, f=1, p=3, R=[[2], [1]])  # R = x^3 - x
CHAR2 = dict(p0=2, f=2, p=2, R=[[0], [1]])  # R = x^2 over F_4
DELTA = dict(p0=2, f=4, p=4, R=[[0], [1]], delta=[[1], [1]])  # R = x^4, delta = y^2 + y

GRIDS = {
    "small": [
        Cell(3, 1, 3, 0),
        Cell(3, 1, 3, 1),
        Cell(3, 2, 3, 1),
        Cell(5, 1, 5, 1),
        Cell(2, 2, 2, 1),
        Cell(2, 2, 2, 2, count=1),
    ],
}
GRIDS["extended"] = GRIDS["small"] + [Cell(3, 2, 3, 2, count=1)]  # plus the delta curve below


def _has_rational_A(R: AdditivePolynomial) -> bool:
    G = Heisenberg(R)
    try:
        A = maximal_isotropic_rational(G)
    except AssumptionError:
        return False
    if G.p0 == 2:
        from .heis import all_maximal_isotropic_rational

        lifts = lambda S: all(G.solve_b(a, G.ctx) for a in S.elements)  # noqa: E731
        return lifts(A) or any(lifts(S) for S in all_maximal_isotropic_rational(G))
    return True


def curves_in_cell(cell: Cell, limit: int | None = None):
    """Coefficient tuples (as coordinate lists) for the first qualifying R of a cell."""
    ctx = build_field(cell.p0, cell.f)
    k = 0
    while cell.p0**k < cell.p:
        k += 1
    elems = [ctx.from_index(i) for i in range(ctx.order)]
    found = []
    want = cell.count if limit is None else limit
    for lower in itertools.product(elems, repeat=cell.e):
        for top in elems[1:]:
            coeffs = list(lower) + [top]
            R = AdditivePolynomial.from_step(ctx, coeffs, cell.p)
            if _has_rational_A(R):
                found.append([list(c.c) for c in coeffs])
                if len(found) == want:
                    return found
    return found


def grid_specs(name: str) -> list[CurveSpec]:
    if name not in GRIDS:
        raise KeyError(f"unknown grid {name!r}; choose from {sorted(GRIDS)}")
    specs = [make_spec(**RUNNING), make_spec(**CHAR2)]
    seen = {(3, 1, 3, ((2,), (1,))), (2, 2, 2, ((0, 0), (1, 0)))}
    for cell in GRIDS[name]:
        for R in curves_in_cell(cell):
            key = (cell.p0, cell.f, cell.p, tuple(tuple(c) for c in R))
            if key in seen:
                continue
            seen.add(key)
            specs.append(make_spec(cell.p0, cell.f, cell.p, R))
    if name == "extended":
        specs.append(make_spec(**DELTA))
    return specs
