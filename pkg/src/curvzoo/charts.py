"""Charts and the fundamental curvature pipeline.

A Chart holds a symmetric metric of expressions on n >= 3 coordinates with a
generically nonvanishing determinant; everything downstream (Christoffel
symbols, curvature, covariant derivatives) is computed exactly over the
chart's expression field and cached on the chart.

Index conventions, fixed throughout the package:

* (0,k) tensors are numpy object arrays T[i1, ..., ik] = T(e_i1, ..., e_ik).
* The covariant derivative adds its index FIRST: (nabla T)[x, i1, ..., ik].
* The curvature sign is calibrated so that the round-sphere family carries
  negative scalar curvature, i.e. R is the negative of the
  [nabla_X, nabla_Y] - nabla_[X,Y] commutator convention, lowered by
  R(X1,X2,X3,X4) = g(R(X1,X2)X3, X4).  This is the convention under which
  all classifier coefficients in this package are quoted.
* The exterior derivative of a 1-form is (d a)[i,j] = (d_j a_i - d_i a_j)/2,
  the normalization that makes the weak-symmetry curvature identity
  R.T = 2 da (x) T + Q(pi (x) pi - nabla pi, T) exact (see classifiers).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .exprs import Context, Expr

#: Global curvature sign relative to the commutator convention.
CURVATURE_SIGN = -1

#: Exterior derivative normalization: (d a)_ij = DALPHA_COEFF * (d_i a_j - d_j a_i).
DALPHA_COEFF = Fraction(-1, 2)


class ChartError(ValueError):
    """Invalid metric data (asymmetric or identically singular)."""


def _object_array(shape) -> np.ndarray:
    return np.empty(shape, dtype=object)


def zeros(ctx: Context, shape) -> np.ndarray:
    arr = _object_array(shape)
    arr[...] = ctx.zero
    return arr


class Tensor:
    """A covariant (or once-contravariant) tensor of expressions on a chart.

    valence (r, k) with r in {0, 1}; when r = 1 the contravariant index is
    stored first.  Components live in a numpy object array so componentwise
    arithmetic works through the Expr operators.
    """

    __slots__ = ("chart", "valence", "array", "declared_symmetries")

    def __init__(self, chart: "Chart", valence: tuple[int, int],
                 array: np.ndarray,
                 declared_symmetries: Sequence[str] = ()):
        r, k = valence
        if r not in (0, 1):
            raise ValueError("valence r must be 0 or 1")
        expected = (chart.n,) * (r + k)
        if array.shape != expected:
            raise ValueError(f"component array shape {array.shape} does not "
                             f"match valence {valence}")
        self.chart = chart
        self.valence = valence
        self.array = array
        self.declared_symmetries = tuple(declared_symmetries)
        for sym in self.declared_symmetries:
            if not self._symmetry_holds(sym):
                raise ValueError(f"declared symmetry {sym!r} does not hold")

    @property
    def rank(self) -> int:
        return sum(self.valence)

    def __getitem__(self, idx):
        return self.array[idx]

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.valence == other.valence
                and bool(np.all(self.array == other.array)))

    def __add__(self, other: "Tensor") -> "Tensor":
        return Tensor(self.chart, self.valence, self.array + other.array)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return Tensor(self.chart, self.valence, self.array - other.array)

    def __neg__(self) -> "Tensor":
        return Tensor(self.chart, self.valence, -self.array)

    def scaled(self, factor) -> "Tensor":
        out = self.array.copy()
        flat = out.reshape(-1)
        for i in range(flat.size):
            flat[i] = factor * flat[i]
        return Tensor(self.chart, self.valence, out)

    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.array.flat)

    def nonzero_items(self) -> Iterable[tuple[tuple[int, ...], Expr]]:
        for idx in np.ndindex(self.array.shape):
            e = self.array[idx]
            if not e.is_zero:
                yield idx, e

    def _symmetry_holds(self, sym: str) -> bool:
        # "skew:p,q"  "sym:p,q"  "block:p,q,r,s" (interchange of index pairs)
        kind, _, spec = sym.partition(":")
        slots = tuple(int(s) for s in spec.split(",")) if spec else ()
        arr = self.array
        if kind == "skew":
            p, q = slots
            return bool(np.all(arr == -np.swapaxes(arr, p, q)))
        if kind == "sym":
            p, q = slots
            return bool(np.all(arr == np.swapaxes(arr, p, q)))
        if kind == "block":
            p, q, r, s = slots
            permuted = np.moveaxis(arr, (p, q, r, s), (r, s, p, q))
            return bool(np.all(arr == permuted))
        raise ValueError(f"unknown symmetry spec {sym!r}")


class OneForm:
    """A covector of expressions on a chart."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: "Chart", components: Sequence[Expr]):
        if len(components) != chart.n:
            raise ValueError("wrong number of components")
        self.chart = chart
        self.components = tuple(components)

    def __getitem__(self, i: int) -> Expr:
        return self.components[i]

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.components == other.components

    def __iter__(self):
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


class Chart:
    """Dimension, coordinates, parameters and metric, with cached curvature.

    Immutable after construction; derived objects are computed lazily and
    memoized, so repeated classifier runs on one chart share the pipeline.
    """

    def __init__(self, ctx: Context, metric: np.ndarray,
                 name: str = "chart"):
        n = len(ctx.coords)
        if n < 3:
            raise ChartError("dimension must be at least 3")
        if metric.shape != (n, n):
            raise ChartError("metric must be an n by n matrix")
        for i in range(n):
            for j in range(i):
                if metric[i, j] != metric[j, i]:
                    raise ChartError(
                        f"metric not symmetric at entry ({i+1},{j+1})")
        self.ctx = ctx
        self.name = name
        self.n = n
        self.g = metric
        det = determinant(metric, ctx)
        if det.is_zero:
            raise ChartError("metric is identically singular")
        self.det_g = det
        self.g_inv = _adjugate_inverse(metric, det, ctx)
        self._cache: dict = {}

    def cached(self, key: str, fn):
        value = self._cache.get(key)
        if value is None:
            value = fn()
            self._cache[key] = value
        return value

    # Convenience accessors used across the package.
    @property
    def zero(self) -> Expr:
        return self.ctx.zero

    def metric_tensor(self) -> Tensor:
        return self.cached("g_tensor",
                           lambda: Tensor(self, (0, 2), self.g))

    def __repr__(self):
        return f"Chart({self.name}, n={self.n})"


def determinant(matrix: np.ndarray, ctx: Context) -> Expr:
    """Cofactor-expansion determinant with zero skipping (n <= 5 scale)."""
    n = matrix.shape[0]
    if n == 1:
        return matrix[0, 0]

    def det_rec(rows: tuple[int, ...], cols: tuple[int, ...]) -> Expr:
        if len(rows) == 1:
            return matrix[rows[0], cols[0]]
        # Expand along the row with the most zeros among remaining columns.
        best_row, best_zeros = rows[0], -1
        for r in rows:
            z = sum(1 for c in cols if matrix[r, c].is_zero)
            if z > best_zeros:
                best_row, best_zeros = r, z
        acc = ctx.zero
        sub_rows = tuple(r for r in rows if r != best_row)
        sign = 1 if rows.index(best_row) % 2 == 0 else -1
        for pos, c in enumerate(cols):
            entry = matrix[best_row, c]
            if entry.is_zero:
                continue
            minor = det_rec(sub_rows, cols[:pos] + cols[pos + 1:])
            term = entry * minor
            acc = acc + (term if (sign > 0) == (pos % 2 == 0) else -term)
        return acc

    return det_rec(tuple(range(n)), tuple(range(n)))


def _adjugate_inverse(matrix: np.ndarray, det: Expr, ctx: Context) -> np.ndarray:
    n = matrix.shape[0]
    inv = _object_array((n, n))
    indices = tuple(range(n))
    for i in range(n):
        rows = indices[:i] + indices[i + 1:]
        for j in range(i, n):
            cols = indices[:j] + indices[j + 1:]
            minor = determinant(matrix[np.ix_(rows, cols)], ctx)
            cof = minor if (i + j) % 2 == 0 else -minor
            # Symmetric metric: adjugate is symmetric as well.
            inv[j, i] = inv[i, j] = cof / det
    return inv


def build_chart(ctx_or_coords, metric_entries, params=(),
                name: str = "chart") -> Chart:
    """Build a chart from expression strings or Exprs.

    metric_entries is a full symmetric matrix (sequence of rows); entries may
    be strings in the expression grammar or Expr values.
    """
    ctx = (ctx_or_coords if isinstance(ctx_or_coords, Context)
           else Context(ctx_or_coords, params))
    n = len(ctx.coords)
    g = _object_array((n, n))
    for i in range(n):
        row = metric_entries[i]
        for j in range(n):
            entry = row[j]
            g[i, j] = ctx.parse(entry) if isinstance(entry, str) else entry
    return Chart(ctx, g, name=name)


# ---------------------------------------------------------------------------
# Curvature pipeline.
# ---------------------------------------------------------------------------


def christoffel(chart: Chart) -> np.ndarray:
    """Levi-Civita connection coefficients Gamma[k, i, j] (symmetric in i, j)."""

    def compute():
        ctx, n, g, ginv = chart.ctx, chart.n, chart.g, chart.g_inv
        dg = _object_array((n, n, n))  # dg[l, i, j] = d_l g_ij
        for l in range(n):
            for i in range(n):
                for j in range(i, n):
                    dg[l, i, j] = dg[l, j, i] = g[i, j].diff(l)
        gamma = zeros(ctx, (n, n, n))
        half = Fraction(1, 2)
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    acc = ctx.zero
                    for l in range(n):
                        if ginv[k, l].is_zero:
                            continue
                        term = dg[i, j, l] + dg[j, i, l] - dg[l, i, j]
                        if not term.is_zero:
                            acc = acc + ginv[k, l] * term
                    val = half * acc
                    gamma[k, i, j] = val
                    gamma[k, j, i] = val
        return gamma

    return chart.cached("christoffel", compute)


def riemann(chart: Chart) -> Tensor:
    """Curvature tensor as a (0,4) tensor R[i,j,k,l] = g(R(e_i,e_j)e_k, e_l)."""

    def compute():
        ctx, n, g = chart.ctx, chart.n, chart.g
        gamma = christoffel(chart)
        dgamma = _object_array((n, n, n, n))  # dgamma[p, k, i, j] = d_p Gamma^k_ij
        for p in range(n):
            for k in range(n):
                for i in range(n):
                    for j in range(i, n):
                        d = gamma[k, i, j].diff(p)
                        dgamma[p, k, i, j] = dgamma[p, k, j, i] = d
        arr = zeros(ctx, (n, n, n, n))
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    # Upper-index curvature (commutator convention), slot m:
                    # R(e_i, e_j)e_k = ( d_i G^m_jk - d_j G^m_ik
                    #                    + G^m_ia G^a_jk - G^m_ja G^a_ik ) e_m
                    upper = [None] * n
                    for m in range(n):
                        acc = dgamma[i, m, j, k] - dgamma[j, m, i, k]
                        for a in range(n):
                            t1 = gamma[a, j, k]
                            if not t1.is_zero and not gamma[m, i, a].is_zero:
                                acc = acc + gamma[m, i, a] * t1
                            t2 = gamma[a, i, k]
                            if not t2.is_zero and not gamma[m, j, a].is_zero:
                                acc = acc - gamma[m, j, a] * t2
                        upper[m] = acc
                    for l in range(n):
                        acc = ctx.zero
                        for m in range(n):
                            if not upper[m].is_zero and not g[l, m].is_zero:
                                acc = acc + g[l, m] * upper[m]
                        val = CURVATURE_SIGN * acc
                        arr[i, j, k, l] = val
                        arr[j, i, k, l] = -val
        return Tensor(chart, (0, 4), arr)

    return chart.cached("riemann", compute)


def lowered_to_operator(B: Tensor) -> np.ndarray:
    """(1,3) lift of a (0,4) tensor on the fourth slot.

    Returns Bhat[i, j, k, a] with B(e_i,e_j)e_k = Bhat[i,j,k,a] e_a, i.e. the
    fourth slot is raised with the inverse metric:
    Bhat[i,j,k,a] = B[i,j,k,b] g^{ba}.
    """
    chart = B.chart
    ctx, n, ginv = chart.ctx, chart.n, chart.g_inv
    out = zeros(ctx, (n, n, n, n))
    for idx, val in B.nonzero_items():
        i, j, k, b = idx
        for a in range(n):
            gi = ginv[b, a]
            if not gi.is_zero:
                out[i, j, k, a] = out[i, j, k, a] + val * gi
    return out


def riemann_operator(chart: Chart) -> np.ndarray:
    """(1,3) curvature, contravariant index last: see lowered_to_operator."""
    return chart.cached("riemann13",
                        lambda: lowered_to_operator(riemann(chart)))


def ricci(chart: Chart) -> Tensor:
    """Ricci tensor S[i,j] = g^{ab} R[a,i,j,b]."""

    def compute():
        ctx, n, ginv = chart.ctx, chart.n, chart.g_inv
        R = riemann(chart)
        arr = zeros(ctx, (n, n))
        for i in range(n):
            for j in range(i, n):
                acc = ctx.zero
                for a in range(n):
                    for b in range(n):
                        gi = ginv[a, b]
                        if gi.is_zero:
                            continue
                        r = R[a, i, j, b]
                        if not r.is_zero:
                            acc = acc + gi * r
                arr[i, j] = arr[j, i] = acc
        return Tensor(chart, (0, 2), arr, declared_symmetries=("sym:0,1",))

    return chart.cached("ricci", compute)


def scalar_curvature(chart: Chart) -> Expr:
    """kappa = g^{ij} S_ij."""

    def compute():
        ctx, n, ginv = chart.ctx, chart.n, chart.g_inv
        S = ricci(chart)
        acc = ctx.zero
        for i in range(n):
            for j in range(n):
                gi = ginv[i, j]
                if not gi.is_zero and not S[i, j].is_zero:
                    acc = acc + gi * S[i, j]
        return acc

    return chart.cached("kappa", compute)


def ricci_operator(chart: Chart) -> np.ndarray:
    """Ricci endomorphism matrix: (S X)^a = Sop[a, i] X^i, Sop = g^{ab} S_bi."""

    def compute():
        ctx, n, ginv = chart.ctx, chart.n, chart.g_inv
        S = ricci(chart)
        op = zeros(ctx, (n, n))
        for a in range(n):
            for i in range(n):
                acc = ctx.zero
                for b in range(n):
                    gi = ginv[a, b]
                    if not gi.is_zero and not S[b, i].is_zero:
                        acc = acc + gi * S[b, i]
                op[a, i] = acc
        return op

    return chart.cached("ricci_op", compute)


def ricci_square(chart: Chart) -> Tensor:
    """S2(X,Y) = S(SX, Y), i.e. S2[i,j] = S[i,a] g^{ab} S[b,j]."""

    def compute():
        ctx, n = chart.ctx, chart.n
        S = ricci(chart)
        Sop = ricci_operator(chart)
        arr = zeros(ctx, (n, n))
        for i in range(n):
            for j in range(i, n):
                acc = ctx.zero
                for a in range(n):
                    if not Sop[a, i].is_zero and not S[a, j].is_zero:
                        acc = acc + Sop[a, i] * S[a, j]
                arr[i, j] = arr[j, i] = acc
        return Tensor(chart, (0, 2), arr, declared_symmetries=("sym:0,1",))

    return chart.cached("ricci_square", compute)


def covariant_derivative(chart: Chart, T: Tensor) -> Tensor:
    """nabla T with the derivative index first:

    (nabla T)[x, j1..jk] = d_x T[j1..jk] - sum_m Gamma^a_{x jm} T[.. a at m ..].
    """
    r, k = T.valence
    if r != 0:
        raise ValueError("covariant_derivative expects a covariant tensor")
    ctx, n = chart.ctx, chart.n
    gamma = christoffel(chart)
    out = zeros(ctx, (n,) * (k + 1))
    for idx in np.ndindex(T.array.shape):
        base = T.array[idx]
        for x in range(n):
            val = base.diff(x) if not base.is_zero else ctx.zero
            for m in range(k):
                for a in range(n):
                    gam = gamma[a, x, idx[m]]
                    if gam.is_zero:
                        continue
                    t = T.array[idx[:m] + (a,) + idx[m + 1:]]
                    if not t.is_zero:
                        val = val - gam * t
            out[(x,) + idx] = val
    return Tensor(chart, (0, k + 1), out)


def nabla_riemann(chart: Chart) -> Tensor:
    return chart.cached("nabla_riemann",
                        lambda: covariant_derivative(chart, riemann(chart)))


def exterior_derivative_oneform(chart: Chart, alpha: OneForm) -> Tensor:
    """(d alpha)[i,j] = DALPHA_COEFF * (d_i alpha_j - d_j alpha_i), skew."""
    ctx, n = chart.ctx, chart.n
    arr = zeros(ctx, (n, n))
    for i in range(n):
        for j in range(i + 1, n):
            val = DALPHA_COEFF * (alpha[j].diff(i) - alpha[i].diff(j))
            arr[i, j] = val
            arr[j, i] = -val
    return Tensor(chart, (0, 2), arr, declared_symmetries=("skew:0,1",))


def is_closed(chart: Chart, alpha: OneForm) -> bool:
    return exterior_derivative_oneform(chart, alpha).is_zero()


def covariant_derivative_oneform(chart: Chart, alpha: OneForm) -> Tensor:
    """(nabla alpha)[i,j] = d_i alpha_j - Gamma^a_{ij} alpha_a."""
    ctx, n = chart.ctx, chart.n
    gamma = christoffel(chart)
    arr = zeros(ctx, (n, n))
    for i in range(n):
        for j in range(n):
            val = alpha[j].diff(i)
            for a in range(n):
                gam = gamma[a, i, j]
                if not gam.is_zero and not alpha[a].is_zero:
                    val = val - gam * alpha[a]
            arr[i, j] = val
    return Tensor(chart, (0, 2), arr)


def rank_at_most(Z: Tensor, r: int) -> bool:
    """Generic rank test: all (r+1) x (r+1) minors are canonically zero."""
    n = Z.chart.n
    if not 0 <= r <= n:
        raise ValueError("rank bound out of range")
    if r == n:
        return True
    ctx = Z.chart.ctx
    size = r + 1
    for rows in itertools.combinations(range(n), size):
        for cols in itertools.combinations(range(n), size):
            sub = Z.array[np.ix_(rows, cols)]
            if not determinant(sub, ctx).is_zero:
                return False
    return True


def generic_rank(Z: Tensor) -> int:
    for r in range(Z.chart.n + 1):
        if rank_at_most(Z, r):
            return r
    return Z.chart.n


def oneform(chart: Chart, entries: Sequence[Union[str, Expr, int]]) -> OneForm:
    comps = []
    for e in entries:
        if isinstance(e, str):
            comps.append(chart.ctx.parse(e))
        elif isinstance(e, int):
            comps.append(chart.ctx.integer(e))
        else:
            comps.append(e)
    return OneForm(chart, comps)
