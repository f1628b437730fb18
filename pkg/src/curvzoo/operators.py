"""Curvature operator algebra.

Kulkarni-Nomizu products, the derived curvature tensors (Gaussian, Weyl
conformal, concircular, conharmonic, projective), the derivation action
B . T of a curvature endomorphism, the Tachibana action Q(A, T) of the
metric-like endomorphism X wedge_A Y, and the 1-form action.

Slot conventions: the actions produce (0, k+2) tensors whose two extra
arguments are stored LAST, i.e. components are indexed (i1..ik, h, l)
matching (X1,...,Xk; X, Y); the 1-form action stores its extra argument
last as well.  Endomorphisms are derived from (0,4) tensors by raising the
FOURTH slot, consistent with B(X1,X2,X3,X4) = g(B(X1,X2)X3, X4), and from
(0,2) tensors A via (X wedge_A Y)Z = A(Y,Z) X - A(X,Z) Y.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .charts import (Chart, OneForm, Tensor, covariant_derivative,
                     lowered_to_operator, nabla_riemann, ricci, riemann,
                     scalar_curvature, zeros)


def kulkarni_nomizu(A: Tensor, D: Tensor) -> Tensor:
    """Four-term Kulkarni-Nomizu product of two (0,2) tensors:

    (A ^ D)(X1,X2,Y1,Y2) = A(X1,Y2) D(X2,Y1) + A(X2,Y1) D(X1,Y2)
                         - A(X1,Y1) D(X2,Y2) - A(X2,Y2) D(X1,Y1).
    """
    chart = A.chart
    ctx, n = chart.ctx, chart.n
    a, d = A.array, D.array
    out = zeros(ctx, (n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    acc = ctx.zero
                    if not a[i, l].is_zero and not d[j, k].is_zero:
                        acc = acc + a[i, l] * d[j, k]
                    if not a[j, k].is_zero and not d[i, l].is_zero:
                        acc = acc + a[j, k] * d[i, l]
                    if not a[i, k].is_zero and not d[j, l].is_zero:
                        acc = acc - a[i, k] * d[j, l]
                    if not a[j, l].is_zero and not d[i, k].is_zero:
                        acc = acc - a[j, l] * d[i, k]
                    out[i, j, k, l] = acc
    return Tensor(chart, (0, 4), out)


def gaussian_tensor(chart: Chart) -> Tensor:
    """G = (1/2) g ^ g."""
    def compute():
        g = chart.metric_tensor()
        return kulkarni_nomizu(g, g).scaled(Fraction(1, 2))
    return chart.cached("G", compute)


def weyl_conformal(chart: Chart) -> Tensor:
    """C = R - g^S/(n-2) + kappa g^g / (2(n-1)(n-2))."""
    def compute():
        n = chart.n
        g = chart.metric_tensor()
        R, S = riemann(chart), ricci(chart)
        kappa = scalar_curvature(chart)
        gS = kulkarni_nomizu(g, S).scaled(Fraction(1, n - 2))
        gg = kulkarni_nomizu(g, g).scaled(
            kappa * Fraction(1, 2 * (n - 1) * (n - 2)))
        return R - gS + gg
    return chart.cached("C", compute)


def concircular(chart: Chart) -> Tensor:
    """K = R - kappa g^g / (2 n (n-1))."""
    def compute():
        n = chart.n
        g = chart.metric_tensor()
        kappa = scalar_curvature(chart)
        gg = kulkarni_nomizu(g, g).scaled(kappa * Fraction(1, 2 * n * (n - 1)))
        return riemann(chart) - gg
    return chart.cached("K", compute)


def conharmonic(chart: Chart) -> Tensor:
    """conh(R) = R - g^S/(n-2)."""
    def compute():
        n = chart.n
        gS = kulkarni_nomizu(chart.metric_tensor(), ricci(chart))
        return riemann(chart) - gS.scaled(Fraction(1, n - 2))
    return chart.cached("conh", compute)


def projective(chart: Chart) -> Tensor:
    """Lowered Weyl projective tensor:

    P(X1,X2,X3,X4) = R(X1,X2,X3,X4)
                   - (S(X2,X3) g(X1,X4) - S(X1,X3) g(X2,X4)) / (n-2).

    Not a generalized curvature tensor in general; produced lowered only and
    reported as-is.
    """
    def compute():
        ctx, n, g = chart.ctx, chart.n, chart.g
        R, S = riemann(chart), ricci(chart)
        coeff = Fraction(1, n - 2)
        out = zeros(ctx, (n, n, n, n))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        val = R[i, j, k, l]
                        if not S[j, k].is_zero and not g[i, l].is_zero:
                            val = val - coeff * (S[j, k] * g[i, l])
                        if not S[i, k].is_zero and not g[j, l].is_zero:
                            val = val + coeff * (S[i, k] * g[j, l])
                        out[i, j, k, l] = val
        return Tensor(chart, (0, 4), out)
    return chart.cached("P", compute)


_DERIVED = {"G": gaussian_tensor, "C": weyl_conformal, "K": concircular,
            "conh": conharmonic, "P": projective}


def derived_tensor(chart: Chart, which: str) -> Tensor:
    """One of the named curvature tensors: G, C, K, conh, P (R via riemann)."""
    try:
        return _DERIVED[which](chart)
    except KeyError:
        raise ValueError(f"unknown derived tensor {which!r}") from None


def named_tensor(chart: Chart, which: str) -> Tensor:
    """Tensor lookup including R, S and g, used by classifier batteries."""
    if which == "R":
        return riemann(chart)
    if which == "S":
        return ricci(chart)
    if which == "g":
        return chart.metric_tensor()
    return derived_tensor(chart, which)


def dot_named(chart: Chart, acting: str, tname: str) -> Tensor:
    """Chart-cached B.T for named tensors (the battery's hot path)."""
    return chart.cached(f"dot:{acting}.{tname}",
                        lambda: dot_action(named_tensor(chart, acting),
                                           named_tensor(chart, tname)))


def tachibana_named(chart: Chart, aname: str, tname: str) -> Tensor:
    """Chart-cached Q(A, T) for named tensors."""
    return chart.cached(f"Q:{aname}.{tname}",
                        lambda: tachibana(named_tensor(chart, aname),
                                          named_tensor(chart, tname)))


def dot_action(B: Tensor, T: Tensor) -> Tensor:
    """Derivation action of a (0,4) curvature tensor on a (0,k) tensor:

    (B.T)(X1..Xk; X, Y) = -sum_m T(X1, .., B(X,Y)X_m, .., Xk),

    skew in the trailing pair.  The endomorphism uses the fourth-slot lift.
    """
    chart = B.chart
    ctx, n = chart.ctx, chart.n
    r, k = T.valence
    if r != 0 or k < 1:
        raise ValueError("dot_action expects a covariant tensor of rank >= 1")
    Bhat = lowered_to_operator(B)  # Bhat[h,l,i,a]
    # Index nonzero endomorphism entries by the contracted slot a, h < l only.
    by_a: dict[int, list] = {a: [] for a in range(n)}
    for h in range(n):
        for l in range(h + 1, n):
            for i in range(n):
                for a in range(n):
                    v = Bhat[h, l, i, a]
                    if not v.is_zero:
                        by_a[a].append((h, l, i, v))
    out = zeros(ctx, (n,) * (k + 2))
    for J, tval in T.nonzero_items():
        for m in range(k):
            for h, l, i, v in by_a[J[m]]:
                idx = J[:m] + (i,) + J[m + 1:] + (h, l)
                out[idx] = out[idx] - v * tval
    _reflect_last_pair(out, n, k)
    return Tensor(chart, (0, k + 2), out)


def tachibana(A: Tensor, T: Tensor) -> Tensor:
    """Tachibana action of a (0,2) tensor on a (0,k) tensor:

    Q(A,T)(X1..Xk; X, Y) = -sum_m T(X1, .., (X wedge_A Y)X_m, .., Xk),

    skew in the trailing pair.
    """
    chart = A.chart
    ctx, n = chart.ctx, chart.n
    r, k = T.valence
    if r != 0 or k < 1:
        raise ValueError("tachibana expects a covariant tensor of rank >= 1")
    a = A.array
    out = zeros(ctx, (n,) * (k + 2))
    # -A(Y,Xm) T(..X@m..) + A(X,Xm) T(..Y@m..) contributes, for a nonzero
    # T[J], at trailing pairs where one member equals J[m].
    for J, tval in T.nonzero_items():
        for m in range(k):
            jm = J[m]
            for i in range(n):
                for c in range(n):
                    if c == jm:
                        continue
                    av = a[c, i]
                    if av.is_zero:
                        continue
                    contrib = av * tval
                    idx = J[:m] + (i,) + J[m + 1:]
                    out[idx + (jm, c)] = out[idx + (jm, c)] - contrib
                    out[idx + (c, jm)] = out[idx + (c, jm)] + contrib
    return Tensor(chart, (0, k + 2), out)


def oneform_dot(mu: OneForm, T: Tensor) -> Tensor:
    """1-form action, extra slot last:

    (mu . T)(X1..Xk; X) = -sum_m mu(X_m) T(X1, .., X at slot m, .., Xk).
    """
    chart = mu.chart
    ctx, n = chart.ctx, chart.n
    r, k = T.valence
    if r != 0 or k < 1:
        raise ValueError("oneform_dot expects a covariant tensor of rank >= 1")
    out = zeros(ctx, (n,) * (k + 1))
    for J, tval in T.nonzero_items():
        for m in range(k):
            for i in range(n):
                mv = mu[i]
                if mv.is_zero:
                    continue
                idx = J[:m] + (i,) + J[m + 1:] + (J[m],)
                out[idx] = out[idx] - mv * tval
    return Tensor(chart, (0, k + 1), out)


def _reflect_last_pair(out: np.ndarray, n: int, k: int) -> None:
    # Fill (.., l, h) = -(.., h, l) for h < l; diagonal stays zero.
    for J in np.ndindex(out.shape[:k]):
        for h in range(n):
            for l in range(h + 1, n):
                v = out[J + (h, l)]
                if not v.is_zero:
                    out[J + (l, h)] = -v


def check_gct(B: Tensor) -> dict[str, bool]:
    """Generalized-curvature-tensor axioms for a (0,4) tensor:

    (i) first-Bianchi cyclic sum over the first three slots vanishes,
    (ii) skew-symmetry in the first pair,
    (iii) block interchange symmetry.
    """
    arr = B.array
    n = B.chart.n
    first_bianchi = True
    block = True
    for i, j, k, l in np.ndindex(arr.shape):
        if first_bianchi:
            acc = arr[i, j, k, l] + arr[j, k, i, l] + arr[k, i, j, l]
            if not acc.is_zero:
                first_bianchi = False
        if block and arr[i, j, k, l] != arr[k, l, i, j]:
            block = False
        if not first_bianchi and not block:
            break
    return {
        "first_bianchi": first_bianchi,
        "skew_first_pair": bool(np.all(arr == -np.swapaxes(arr, 0, 1))),
        "block_interchange": block,
    }


def is_gct(B: Tensor) -> bool:
    return all(check_gct(B).values())


def check_second_bianchi(chart: Chart, B: Tensor) -> bool:
    """Cyclic covariant-derivative identity making a GCT 'proper':

    (nabla_X1 B)(X2,X3,..) + (nabla_X2 B)(X3,X1,..) + (nabla_X3 B)(X1,X2,..) = 0.
    """
    D = (nabla_riemann(chart) if B is riemann(chart)
         else covariant_derivative(chart, B)).array
    for h, i, j, k, l in np.ndindex(D.shape):
        acc = D[h, i, j, k, l] + D[i, j, h, k, l] + D[j, h, i, k, l]
        if not acc.is_zero:
            return False
    return True


def is_proper_gct(chart: Chart, B: Tensor) -> bool:
    return is_gct(B) and check_second_bianchi(chart, B)


def walker_cyclic_check(chart: Chart, B: Tensor) -> bool:
    """Cyclic identity for the curvature action on a (0,4) tensor:

    (R(X1,X2).B)(X3,X4,X5,X6) + (R(X3,X4).B)(X5,X6,X1,X2)
                              + (R(X5,X6).B)(X1,X2,X3,X4) = 0,

    the classical Walker identity when B = R.
    """
    RB = dot_action(riemann(chart), B).array  # indexed (i3,i4,i5,i6; i1,i2)
    n = chart.n
    for idx in np.ndindex((n,) * 6):
        i1, i2, i3, i4, i5, i6 = idx
        acc = RB[i3, i4, i5, i6, i1, i2]
        acc = acc + RB[i5, i6, i1, i2, i3, i4]
        acc = acc + RB[i1, i2, i3, i4, i5, i6]
        if not acc.is_zero:
            return False
    return True
