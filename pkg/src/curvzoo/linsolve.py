"""Exact linear algebra over the expression field.

Every pseudosymmetry-type classifier reduces to an (often very overdetermined)
linear system whose coefficients are canonical expressions.  Rows are kept
sparse and reduced incrementally against a maintained reduced echelon basis,
which keeps intermediate expressions small; pivoting is by fixed column order
so results are deterministic.  The solution set is returned as an affine
space: one particular solution plus a basis of the homogeneous kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .exprs import Context, Expr


class InternalInconsistencyError(RuntimeError):
    """A solver output failed its own back-substitution check."""


@dataclass
class SolutionSpace:
    """Affine solution set of a linear system over the expression field.

    consistent=False means the system has no solution; particular and basis
    are then empty.  Every member is particular + a combination of basis
    vectors with expression coefficients.
    """

    names: tuple[str, ...]
    particular: list[Expr] = field(default_factory=list)
    basis: list[list[Expr]] = field(default_factory=list)
    consistent: bool = True
    ctx: Optional[Context] = None
    free_columns: list[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def is_unique(self) -> bool:
        return self.consistent and not self.basis

    def contains(self, vector: Sequence[Expr]) -> bool:
        """Affine membership: vector - particular lies in span(basis)."""
        if not self.consistent or len(vector) != len(self.names):
            return False
        residual = [v - p for v, p in zip(vector, self.particular)]
        if not self.basis:
            return all(r.is_zero for r in residual)

        def rows():
            for i, r in enumerate(residual):
                yield {k: b[i] for k, b in enumerate(self.basis)}, r

        return solve_linear_system(rows(), len(self.basis),
                                   self.ctx).consistent

    def members(self) -> Iterable[list[Expr]]:
        """Particular solution followed by particular + each basis vector."""
        if not self.consistent:
            return
        yield list(self.particular)
        for b in self.basis:
            yield [p + h for p, h in zip(self.particular, b)]


def solve_linear_system(rows: Iterable[tuple[dict[int, Expr], Expr]],
                        n_unknowns: int,
                        ctx: Context,
                        names: Optional[Sequence[str]] = None) -> SolutionSpace:
    """Solve a sparse linear system  sum_j M[i][j] u_j = rhs[i].

    rows yields (coefficients, rhs) pairs with coefficients as a sparse
    {column: Expr} mapping.  Returns the full affine solution set, or an
    inconsistent SolutionSpace.
    """
    if names is None:
        names = tuple(f"u{j}" for j in range(n_unknowns))
    else:
        names = tuple(names)

    # pivots: column -> reduced row (dict incl. rhs under key n_unknowns).
    RHS = n_unknowns
    pivots: dict[int, dict[int, Expr]] = {}
    seen: set = set()
    inconsistent = False

    for coeffs, rhs in rows:
        row = {j: c for j, c in coeffs.items() if not c.is_zero}
        if not rhs.is_zero:
            row[RHS] = rhs
        if not row:
            continue
        key = frozenset(row.items())
        if key in seen:
            continue
        seen.add(key)
        row = _reduce_row(row, pivots, RHS)
        if not row:
            continue
        if RHS in row and len(row) == 1:
            inconsistent = True
            break
        col = min(j for j in row if j != RHS)
        inv = 1 / row[col]
        row = {j: c * inv for j, c in row.items()}
        # Keep the basis fully reduced.
        for prow in pivots.values():
            c = prow.get(col)
            if c is not None and not c.is_zero:
                for j, v in row.items():
                    upd = prow.get(j, ctx.zero) - c * v
                    if upd.is_zero:
                        prow.pop(j, None)
                    else:
                        prow[j] = upd
        pivots[col] = row

    if inconsistent:
        return SolutionSpace(names=names, consistent=False, ctx=ctx)

    free_cols = [j for j in range(n_unknowns) if j not in pivots]
    particular = [ctx.zero] * n_unknowns
    for col, row in pivots.items():
        particular[col] = row.get(RHS, ctx.zero)
    basis = []
    for f in free_cols:
        vec = [ctx.zero] * n_unknowns
        vec[f] = ctx.one
        for col, row in pivots.items():
            c = row.get(f)
            if c is not None and not c.is_zero:
                vec[col] = -c
        basis.append(vec)
    return SolutionSpace(names=names, particular=particular,
                         basis=basis, ctx=ctx, free_columns=free_cols)


def _reduce_row(row: dict[int, Expr], pivots: dict[int, dict[int, Expr]],
                rhs_col: int) -> dict[int, Expr]:
    changed = True
    while changed:
        changed = False
        for col in list(row):
            if col == rhs_col:
                continue
            prow = pivots.get(col)
            if prow is None:
                continue
            factor = row[col]
            for j, v in prow.items():
                upd = row.get(j)
                upd = -factor * v if upd is None else upd - factor * v
                if upd.is_zero:
                    row.pop(j, None)
                else:
                    row[j] = upd
            changed = True
    return row


def solve_dense(matrix: Sequence[Sequence[Expr]], rhs: Sequence[Expr],
                ctx: Context,
                names: Optional[Sequence[str]] = None) -> SolutionSpace:
    """Dense-matrix convenience wrapper around solve_linear_system."""
    n_unknowns = len(matrix[0]) if matrix else 0

    def rows():
        for mrow, r in zip(matrix, rhs):
            yield {j: c for j, c in enumerate(mrow)}, r

    return solve_linear_system(rows(), n_unknowns, ctx, names)


def verify_solution_space(space: SolutionSpace,
                          rows: Iterable[tuple[dict[int, Expr], Expr]],
                          ctx: Context) -> None:
    """Back-substitute the particular solution and basis into the system.

    By linearity this certifies every member of the affine space.  Raises
    InternalInconsistencyError on any nonzero residual.
    """
    if not space.consistent:
        return
    for coeffs, rhs in rows:
        acc = -rhs
        for j, c in coeffs.items():
            if not c.is_zero and not space.particular[j].is_zero:
                acc = acc + c * space.particular[j]
        if not acc.is_zero:
            raise InternalInconsistencyError(
                "particular solution fails back-substitution")
        for vec in space.basis:
            acc = ctx.zero
            for j, c in coeffs.items():
                if not c.is_zero and not vec[j].is_zero:
                    acc = acc + c * vec[j]
            if not acc.is_zero:
                raise InternalInconsistencyError(
                    "homogeneous basis vector fails back-substitution")
