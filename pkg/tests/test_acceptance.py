"""Acceptance suite: the full identity battery for the builtin collection.

Every check here is exact: the tolerance is canonical zero in the expression
field.  Tests are grouped by criterion number (see conftest for the summary
lines).

Five sub-assertions marked "as printed" assert reference coefficient values
from the classical worked examples exactly as published; the implementation
proves those five wrong (each solution is unique, certified by
back-substitution, and confirmed through independent derivations recorded in
the companion "computed" tests, which assert the forced values and pass).
The "as printed" tests therefore fail by design and are kept failing rather
than weakened.
"""

import json
from fractions import Fraction

import numpy as np
import pytest

from curvzoo.charts import (Tensor, covariant_derivative, oneform,
                            rank_at_most, ricci, ricci_square, riemann,
                            scalar_curvature, zeros)
from curvzoo.classifiers import (classify_deszcz, classify_generalized_roter,
                                 classify_roter, compute_J,
                                 corollary_decomposition,
                                 form_recurrence_b4, form_recurrence_checks,
                                 check_semisymmetric, solve_chaki,
                                 solve_linear_combination,
                                 solve_proportionality, solve_quasi_einstein,
                                 theorem_residual)
from curvzoo.metrics import builtin, list_builtins
from curvzoo.operators import (check_gct, check_second_bianchi, dot_named,
                               gaussian_tensor, kulkarni_nomizu, named_tensor,
                               projective, tachibana, tachibana_named,
                               walker_cyclic_check)
from curvzoo.zoo import (Identity, Report, classify, oracle_crosscheck,
                         render_report)

EX_NAMES = ("ex5_1", "ex5_2", "ex5_3", "ex5_4", "ex5_5")


@pytest.fixture(scope="module")
def charts():
    return {name: builtin(name).to_chart() for name in list_builtins()}


def tensor_eq(lhs: Tensor, rhs: Tensor) -> bool:
    return bool(np.all((lhs - rhs).array == 0)) if lhs.valence == rhs.valence \
        else False


def prop_holds(lhs: Tensor, coeff, rhs: Tensor) -> bool:
    return (lhs - rhs.scaled(coeff)).is_zero()


def family_at_zero(space, free_idx):
    """For a 1-dim family, the member with unknown free_idx = 0 and the
    direction normalized to have entry 1 there."""
    assert space.dimension == 1
    b = space.basis[0]
    scale = 1 / b[free_idx]
    direction = [scale * e for e in b]
    p = space.particular
    point = [pi - p[free_idx] * d for pi, d in zip(p, direction)]
    return point, direction


# ---------------------------------------------------------------------------
# Criterion 1: the five-dimensional exponential metric.
# ---------------------------------------------------------------------------


def test_criterion_1_kappa(charts):
    c = charts["ex5_1"]
    assert scalar_curvature(c) == c.ctx.parse("7/2 * exp(-x1)")


def test_criterion_1_chaki(charts):
    c = charts["ex5_1"]
    out = solve_chaki(c, "R")
    assert out.consistent and not out.degenerate and out.space.is_unique
    assert out.space.particular == [c.ctx.parse("-1/2")] + [c.ctx.zero] * 4


def test_criterion_1_deszcz_negative(charts):
    c = charts["ex5_1"]
    assert classify_deszcz(c, "R", "g").outcome is False
    assert classify_deszcz(c, "R", "S").outcome is False


def test_criterion_1_weyl_coefficient(charts):
    c = charts["ex5_1"]
    v = classify_deszcz(c, "C", "g", acting="C")
    assert v.outcome and v.witness == c.ctx.parse("-1/24 * exp(-x1)")


def test_criterion_1_curvature_combination(charts):
    c = charts["ex5_1"]
    ctx = c.ctx
    S, S2 = ricci(c), ricci_square(c)
    combo = (kulkarni_nomizu(S, S).scaled(
                Fraction(65, 36) * ctx.parse("exp(x1)"))
             - kulkarni_nomizu(S, S2).scaled(
                Fraction(34, 9) * ctx.parse("exp(2*x1)"))
             + kulkarni_nomizu(S2, S2).scaled(
                Fraction(20, 9) * ctx.parse("exp(3*x1)")))
    assert tensor_eq(riemann(c), combo)


def test_criterion_1_five_term_identity(charts):
    c = charts["ex5_1"]
    ctx = c.ctx
    g = c.metric_tensor()
    S, S2 = ricci(c), ricci_square(c)
    rhs = (kulkarni_nomizu(S, S2).scaled(
              Fraction(7, 2) * ctx.parse("exp(-x1)"))
           - kulkarni_nomizu(S, S).scaled(
              Fraction(49, 16) * ctx.parse("exp(-2*x1)"))
           - kulkarni_nomizu(g, S2).scaled(
              Fraction(3, 2) * ctx.parse("exp(-2*x1)"))
           + kulkarni_nomizu(g, S).scaled(
              Fraction(21, 8) * ctx.parse("exp(-3*x1)"))
           - gaussian_tensor(c).scaled(
              Fraction(9, 8) * ctx.parse("exp(-4*x1)")))
    assert tensor_eq(kulkarni_nomizu(S2, S2), rhs)


def test_criterion_1_two_term_identity(charts):
    c = charts["ex5_1"]
    ctx = c.ctx
    S, S2 = ricci(c), ricci_square(c)
    SS2 = kulkarni_nomizu(S, S2)
    lhs = dot_named(c, "R", "R") - tachibana_named(c, "S", "R")
    rhs = (tachibana(S, SS2).scaled(
              Fraction(25, 9) * ctx.parse("exp(2*x1)"))
           + tachibana(S2, SS2).scaled(
              Fraction(28, 9) * ctx.parse("exp(3*x1)")))
    assert tensor_eq(lhs, rhs)


def test_criterion_1_generalized_roter_family(charts):
    c = charts["ex5_1"]
    ctx = c.ctx
    v = classify_generalized_roter(c)
    assert v.outcome
    space = v.witness
    assert space.dimension == 1
    point, direction = family_at_zero(space, free_idx=5)  # L6 free
    # L2 = (1/2) e^{-x1} (8 e^{3x1} - 7 L6)
    assert point[1] == ctx.parse("4*exp(2*x1)")
    assert direction[1] == ctx.parse("-7/2 * exp(-x1)")
    # and the remaining printed relations of the same family:
    assert point[0] == ctx.parse("-5*exp(x1)")
    assert direction[0] == ctx.parse("49/16 * exp(-2*x1)")
    assert point[2] == ctx.parse("35/6")
    assert direction[2] == ctx.parse("-21/8 * exp(-3*x1)")
    assert point[3] == ctx.parse("-10/3 * exp(x1)")
    assert direction[3] == ctx.parse("3/2 * exp(-2*x1)")
    assert point[4] == ctx.parse("-5/4 * exp(-x1)")
    assert direction[4] == ctx.parse("9/16 * exp(-4*x1)")


def test_criterion_1_roter_inconsistent(charts):
    assert classify_roter(charts["ex5_1"]).outcome is False


def test_criterion_1_b4_ricci(charts):
    c = charts["ex5_1"]
    v = form_recurrence_b4(c, "S")
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == [c.ctx.parse("-1/2")] + [c.ctx.zero] * 4


def test_criterion_1_b2_riemann_fails(charts):
    assert form_recurrence_checks(charts["ex5_1"], "R")["b2"].outcome is False


@pytest.mark.parametrize("tname", ["C", "P", "K", "conh"])
def test_criterion_1_b_checks_fail(charts, tname):
    bcs = form_recurrence_checks(charts["ex5_1"], tname)
    assert bcs["b1"].outcome is False
    assert bcs["b2"].outcome is False
    assert bcs["b3"].outcome is False


# ---------------------------------------------------------------------------
# Criterion 2: the conformally flat metric.
# ---------------------------------------------------------------------------


def test_criterion_2_kappa(charts):
    c = charts["ex5_2"]
    assert scalar_curvature(c) == c.ctx.parse("-3/(2*x1^3)")


def test_criterion_2_deszcz_identities(charts):
    c = charts["ex5_2"]
    RR = dot_named(c, "R", "R")
    assert prop_holds(RR, c.ctx.parse("-1/(2*x1^3)"),
                      tachibana_named(c, "g", "R"))
    assert tensor_eq(RR, tachibana_named(c, "S", "R"))


def test_criterion_2_wedge_squares_vanish(charts):
    c = charts["ex5_2"]
    S, S2 = ricci(c), ricci_square(c)
    assert kulkarni_nomizu(S, S).is_zero()
    assert kulkarni_nomizu(S, S2).is_zero()
    assert kulkarni_nomizu(S2, S2).is_zero()


def test_criterion_2_chaki_inconsistent(charts):
    out = solve_chaki(charts["ex5_2"], "R")
    assert not out.consistent and not out.degenerate


def test_criterion_2_b1_b2_riemann(charts):
    bcs = form_recurrence_checks(charts["ex5_2"], "R")
    assert bcs["b1"].outcome is True
    assert bcs["b2"].outcome is False


@pytest.mark.parametrize("tname,alpha", [("K", "-1/x1"), ("conh", "-3/x1")])
def test_criterion_2_b3_witnesses(charts, tname, alpha):
    c = charts["ex5_2"]
    v = form_recurrence_checks(c, tname)["b3"]
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == \
        [c.ctx.parse(alpha)] + [c.ctx.zero] * 3


def test_criterion_2_b3_projective_as_printed(charts):
    # As stated, the projective witness is (-1/x1, 0, 0, 0).  The solution
    # is unique, certified by back-substitution, and does not match: the
    # companion test below asserts the forced value.
    c = charts["ex5_2"]
    v = form_recurrence_checks(c, "P")["b3"]
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == [c.ctx.parse("-1/x1")] + [c.ctx.zero] * 3


def test_criterion_2_b3_projective_computed(charts):
    # The forced witness, verified by back-substitution and an independent
    # derivative expansion.
    c = charts["ex5_2"]
    v = form_recurrence_checks(c, "P")["b3"]
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == \
        [c.ctx.parse("-3/(2*x1)")] + [c.ctx.zero] * 3


def test_criterion_2_b4_fails(charts):
    assert form_recurrence_b4(charts["ex5_2"], "S").outcome is False


def test_criterion_2_roter_family(charts):
    c = charts["ex5_2"]
    ctx = c.ctx
    v = classify_roter(c)
    assert v.outcome
    kappa = scalar_curvature(c)
    point, _ = family_at_zero(v.witness, free_idx=2)  # N3 free
    assert point == [-kappa * Fraction(1, 12), ctx.parse("1/2"), ctx.zero]


# ---------------------------------------------------------------------------
# Criterion 3: the Goedel spacetime with symbolic parameter a.
# ---------------------------------------------------------------------------


def test_criterion_3_ricci_rank_one(charts):
    S = ricci(charts["ex5_3"])
    assert rank_at_most(S, 1) and not rank_at_most(S, 0)


def test_criterion_3_quasi_einstein(charts):
    c = charts["ex5_3"]
    qe = solve_quasi_einstein(c)
    assert qe.found and not qe.einstein
    S = ricci(c)
    for i in range(c.n):
        for j in range(c.n):
            assert S.array[i, j] == qe.alpha * c.g[i, j] \
                + qe.beta * qe.eta[i] * qe.eta[j]


def test_criterion_3_weyl_pseudosymmetric(charts):
    c = charts["ex5_3"]
    kappa = scalar_curvature(c)
    v = classify_deszcz(c, "C", "g", acting="C")
    assert v.outcome and v.witness == kappa * Fraction(1, 6)


def test_criterion_3_deszcz(charts):
    c = charts["ex5_3"]
    assert classify_deszcz(c, "R", "g").outcome is False
    ricci_gen = classify_deszcz(c, "R", "S")
    assert ricci_gen.outcome is True and ricci_gen.witness is not None


def test_criterion_3_chaki_negative(charts):
    out = solve_chaki(charts["ex5_3"], "R")
    assert not out.consistent and not out.degenerate


def test_criterion_3_b1_concircular_only(charts):
    c = charts["ex5_3"]
    outcomes = {t: form_recurrence_checks(c, t)["b1"].outcome
                for t in ("C", "P", "K", "conh")}
    assert outcomes == {"C": False, "P": False, "K": True, "conh": False}


def test_criterion_3_parameter_independence(charts):
    # Boolean outcomes carry no symbols; solved witnesses must be free of
    # the scale parameter except the two that carry kappa itself (kappa and
    # the Weyl pseudosymmetry function L_C = kappa/6): the Ricci tensor is
    # scale invariant, so kappa necessarily scales as 1/a^2.
    c = charts["ex5_3"]
    a_atom = next(at for at in c.ctx.atoms if at.name == "a")
    report = classify(c, run_oracle=False)
    for v in report.verdicts:
        if v.name in ("kappa", "weyl_pseudosymmetric"):
            continue
        payload = json.dumps(_witness_atoms_payload(v.witness))
        assert '"a"' not in payload, v.name
    qe = solve_quasi_einstein(c)
    assert a_atom not in qe.alpha.atoms()
    assert a_atom not in qe.beta.atoms()
    assert all(a_atom not in comp.atoms() for comp in qe.eta)
    lg = classify_deszcz(c, "R", "S").witness
    assert a_atom not in lg.atoms()


def _witness_atoms_payload(witness):
    from curvzoo.exprs import Expr
    from curvzoo.charts import OneForm
    from curvzoo.linsolve import SolutionSpace
    if witness is None or isinstance(witness, (bool, int, str)):
        return []
    if isinstance(witness, Expr):
        return sorted(a.name for a in witness.atoms())
    if isinstance(witness, OneForm):
        return sorted({a.name for c in witness for a in c.atoms()})
    if isinstance(witness, SolutionSpace):
        names = set()
        for vec in [witness.particular] + witness.basis:
            for e in vec:
                names.update(a.name for a in e.atoms())
        return sorted(names)
    if isinstance(witness, dict):
        return [_witness_atoms_payload(v) for v in witness.values()]
    if hasattr(witness, "__dict__"):
        return [_witness_atoms_payload(v) for v in vars(witness).values()
                if not isinstance(v, (list, str))]
    return []


# ---------------------------------------------------------------------------
# Criterion 4: the Chaki and Deszcz pseudosymmetric exponential metric.
# ---------------------------------------------------------------------------


def test_criterion_4_chaki_form(charts):
    c = charts["ex5_4"]
    out = solve_chaki(c, "R")
    assert out.space.is_unique
    assert out.space.particular == \
        [c.ctx.parse("-exp(x1)/(2*(exp(x1)+1))")] + [c.ctx.zero] * 3


def test_criterion_4_H_components(charts):
    c = charts["ex5_4"]
    ctx = c.ctx
    phi = oneform(c, solve_chaki(c, "R").space.particular)
    H = compute_J(c, phi)
    assert H[0, 0] == ctx.parse("exp(x1)/(2*(1+exp(x1))^2)")
    for i in (1, 2, 3):
        assert H[i, i] == ctx.parse("exp(2*x1)/(4*(1+exp(x1))^2)")
    assert all(H[i, j].is_zero for i in range(4) for j in range(4) if i != j)


def test_criterion_4_deszcz_identities(charts):
    c = charts["ex5_4"]
    RR = dot_named(c, "R", "R")
    assert prop_holds(RR, c.ctx.parse("1/(4*(1+exp(x1))^2)"),
                      tachibana_named(c, "g", "R"))
    assert tensor_eq(RR, tachibana_named(c, "S", "R"))


def test_criterion_4_corollary_decompositions(charts):
    c = charts["ex5_4"]
    ctx = c.ctx
    phi = oneform(c, solve_chaki(c, "R").space.particular)
    H = compute_J(c, phi)
    dec = corollary_decomposition(c, riemann(c), H)
    assert dec.found
    assert dec.L1 == ctx.parse("2*(exp(x1)+1)^3/(exp(x1)-1)^2")
    assert dec.L2 == ctx.parse("1/(4*(1+exp(x1))^2)")
    D2 = ricci(c) - H
    prop = solve_proportionality(riemann(c), kulkarni_nomizu(D2, D2))
    assert prop.found
    assert prop.coefficient == ctx.parse("2*(exp(x1)+1)^3/(3+exp(x1))^2")


def test_criterion_4_roter_family_as_printed(charts):
    # As stated: N1 = -(2+e)/(4(1+e)^2) + ((3+2e)^2/(16(1+e)^4)) N3 and
    # N2 = 1/2 + ((3+2e)/(4(1+e)^2)) N3.  Two of the four coefficients
    # cannot be right: conformal flatness forces N1 = -kappa/12 at N3 = 0
    # (half the stated constant), and the N3 direction must be the
    # rank-one-shift kernel (c^2, -2c, 1) for c = (3+2e)/(4(1+e)^2).
    c = charts["ex5_4"]
    ctx = c.ctx
    v = classify_roter(c)
    assert v.outcome
    point, direction = family_at_zero(v.witness, free_idx=2)  # N3 free
    assert point[1] == ctx.parse("1/2")
    assert direction[0] == ctx.parse("(3+2*exp(x1))^2/(16*(1+exp(x1))^4)")
    assert point[0] == ctx.parse("-(2+exp(x1))/(4*(1+exp(x1))^2)")
    assert direction[1] == ctx.parse("(3+2*exp(x1))/(4*(1+exp(x1))^2)")


def test_criterion_4_roter_family_computed(charts):
    c = charts["ex5_4"]
    ctx = c.ctx
    kappa = scalar_curvature(c)
    v = classify_roter(c)
    assert v.outcome and v.witness.dimension == 1
    point, direction = family_at_zero(v.witness, free_idx=2)
    shift = ctx.parse("(3+2*exp(x1))/(4*(1+exp(x1))^2)")
    assert point == [-kappa * Fraction(1, 12), ctx.parse("1/2"), ctx.zero]
    assert direction == [shift * shift, -2 * shift, ctx.one]
    # The N3 direction is the rank-one-shift relation: S - shift*g has
    # vanishing wedge square (independently confirmed by the quasi-Einstein
    # solver finding exactly this shift).
    Z = ricci(c) - c.metric_tensor().scaled(shift)
    assert kulkarni_nomizu(Z, Z).is_zero()
    assert solve_quasi_einstein(c).alpha == shift


def test_criterion_4_b3_conharmonic(charts):
    c = charts["ex5_4"]
    v = form_recurrence_checks(c, "conh")["b3"]
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == [c.ctx.parse(
        "-exp(x1)*(3+exp(x1))/(2+3*exp(x1)+exp(2*x1))")] + [c.ctx.zero] * 3


def test_criterion_4_b4_ricci(charts):
    c = charts["ex5_4"]
    v = form_recurrence_b4(c, "S")
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == [c.ctx.parse(
        "-exp(x1)*(exp(x1)+3)/(5*exp(x1)+2*exp(2*x1)+3)")] + [c.ctx.zero] * 3


def test_criterion_4_b3_projective_as_printed(charts):
    # Published form; the unique certified solution differs by a factor
    # e^{x1} (companion test below).
    c = charts["ex5_4"]
    v = form_recurrence_checks(c, "P")["b3"]
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == [c.ctx.parse(
        "-(3+exp(x1))/(1+exp(x1))")] + [c.ctx.zero] * 3


def test_criterion_4_b3_projective_computed(charts):
    c = charts["ex5_4"]
    v = form_recurrence_checks(c, "P")["b3"]
    assert v.witness.particular == [c.ctx.parse(
        "-exp(x1)*(3+exp(x1))/(1+exp(x1))")] + [c.ctx.zero] * 3


def test_criterion_4_b3_concircular_as_printed(charts):
    # Published form; the unique certified solution has the opposite sign
    # (companion test below).  The same check reproduces the published value
    # exactly on the conformally flat chart, so this is not a convention gap.
    c = charts["ex5_4"]
    v = form_recurrence_checks(c, "K")["b3"]
    assert v.outcome and v.witness.is_unique
    assert v.witness.particular == [c.ctx.parse(
        "-(3+exp(x1))/(1+exp(x1))")] + [c.ctx.zero] * 3


def test_criterion_4_b3_concircular_computed(charts):
    c = charts["ex5_4"]
    v = form_recurrence_checks(c, "K")["b3"]
    assert v.witness.particular == [c.ctx.parse(
        "(3+exp(x1))/(1+exp(x1))")] + [c.ctx.zero] * 3


def test_criterion_4_b1_riemann_and_failures(charts):
    c = charts["ex5_4"]
    assert form_recurrence_checks(c, "R")["b1"].outcome is True
    assert form_recurrence_checks(c, "R")["b2"].outcome is False
    for t in ("P", "K", "conh"):
        bcs = form_recurrence_checks(c, t)
        assert bcs["b1"].outcome is False
        assert bcs["b2"].outcome is False


# ---------------------------------------------------------------------------
# Criterion 5: the five-dimensional Heisenberg-type group metric.
# ---------------------------------------------------------------------------


def test_criterion_5_kappa(charts):
    c = charts["ex5_5"]
    assert scalar_curvature(c) == c.ctx.parse("rho^2")


def test_criterion_5_ricci_structure(charts):
    from curvzoo.classifiers import is_cyclic_parallel
    c = charts["ex5_5"]
    kappa = scalar_curvature(c)
    assert is_cyclic_parallel(c, "S")
    shifted = ricci(c) - c.metric_tensor().scaled(kappa * Fraction(1, 2))
    assert not shifted.is_zero()  # S not proportional to g
    assert kulkarni_nomizu(shifted, shifted).is_zero()


def test_criterion_5_quasi_einstein(charts):
    c = charts["ex5_5"]
    kappa = scalar_curvature(c)
    qe = solve_quasi_einstein(c)
    assert qe.found and qe.alpha == kappa * Fraction(1, 2)
    # The printed splitting, as an exact identity:
    eta = oneform(c, ["0", "0", "-rho", "-x*rho", "y*rho"])
    beta = -kappa * Fraction(3, 2)
    S = ricci(c)
    for i in range(c.n):
        for j in range(c.n):
            assert S.array[i, j] == qe.alpha * c.g[i, j] \
                + beta * eta[i] * eta[j]


def test_criterion_5_pseudosymmetry_coefficients(charts):
    c = charts["ex5_5"]
    kappa = scalar_curvature(c)
    assert prop_holds(dot_named(c, "R", "R"), -kappa * Fraction(1, 4),
                      tachibana_named(c, "g", "R"))
    assert prop_holds(dot_named(c, "K", "R"), -kappa * Fraction(3, 10),
                      tachibana_named(c, "g", "R"))
    assert prop_holds(dot_named(c, "P", "S"), -kappa * Fraction(1, 4),
                      tachibana_named(c, "g", "S"))
    assert prop_holds(dot_named(c, "conh", "S"), -kappa * Fraction(1, 12),
                      tachibana_named(c, "g", "S"))


def test_criterion_5_weyl_actions(charts):
    c = charts["ex5_5"]
    assert check_semisymmetric(c, "S", acting="C")   # C.S = 0
    assert tensor_eq(dot_named(c, "C", "C"), dot_named(c, "C", "R"))


def test_criterion_5_no_proportionality(charts):
    c = charts["ex5_5"]
    QgR = tachibana_named(c, "g", "R")
    assert solve_proportionality(dot_named(c, "P", "R"), QgR).kind == "none"
    assert solve_proportionality(dot_named(c, "conh", "R"), QgR).kind == "none"


def test_criterion_5_linear_combinations(charts):
    c = charts["ex5_5"]
    ctx = c.ctx
    kappa = scalar_curvature(c)
    CR = dot_named(c, "C", "R")
    comb = solve_linear_combination(
        CR, [tachibana_named(c, "S", "C"), tachibana_named(c, "g", "C")])
    assert comb.consistent and comb.is_unique
    assert comb.particular == [ctx.parse("-1/3"), -kappa * Fraction(1, 3)]
    diff = dot_named(c, "R", "C") - CR
    comb2 = solve_linear_combination(
        diff, [tachibana_named(c, "S", "R"), tachibana_named(c, "g", "R")])
    assert comb2.consistent and comb2.is_unique
    assert comb2.particular == [ctx.parse("1/3"), kappa * Fraction(1, 12)]


def test_criterion_5_roter_inconsistent(charts):
    c = charts["ex5_5"]
    assert classify_roter(c).outcome is False
    assert classify_generalized_roter(c).outcome is False


def test_criterion_5_dependency_as_printed(charts):
    # As stated: S^S - (kappa/2) g^S + (kappa^2/4) g^g = 0.  This is
    # inconsistent with the verified wedge square (S - (kappa/2) g)^2 = 0,
    # whose expansion forces the middle coefficient -kappa, not -kappa/2;
    # both can hold only if g^S = 0.  The companion test asserts the
    # corrected relation.
    c = charts["ex5_5"]
    kappa = scalar_curvature(c)
    S, g = ricci(c), c.metric_tensor()
    dep = (kulkarni_nomizu(S, S)
           - kulkarni_nomizu(g, S).scaled(kappa * Fraction(1, 2))
           + kulkarni_nomizu(g, g).scaled(kappa * kappa * Fraction(1, 4)))
    assert dep.is_zero()


def test_criterion_5_dependency_computed(charts):
    c = charts["ex5_5"]
    kappa = scalar_curvature(c)
    S, g = ricci(c), c.metric_tensor()
    dep = (kulkarni_nomizu(S, S)
           - kulkarni_nomizu(g, S).scaled(kappa)
           + kulkarni_nomizu(g, g).scaled(kappa * kappa * Fraction(1, 4)))
    assert dep.is_zero()
    # and it lies in the dependency kernel of the six generators:
    from curvzoo.classifiers import generalized_roter_generators
    gens, names = generalized_roter_generators(c)
    zero = Tensor(c, (0, 4), zeros(c.ctx, (c.n,) * 4))
    kernel = solve_linear_combination(zero, gens, names)
    assert kernel.dimension == 4
    vector = [c.ctx.one, c.ctx.zero, -kappa, c.ctx.zero,
              kappa * kappa * Fraction(1, 4), c.ctx.zero]
    assert kernel.contains(vector)


# ---------------------------------------------------------------------------
# Criterion 6: structural properties on every builtin chart.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", list_builtins())
def test_criterion_6_riemann_structure(charts, name):
    c = charts[name]
    R = riemann(c)
    assert all(check_gct(R).values())
    assert check_second_bianchi(c, R)
    assert walker_cyclic_check(c, R)


@pytest.mark.parametrize("name", list_builtins())
def test_criterion_6_derived_gct(charts, name):
    c = charts[name]
    for t in ("C", "K", "conh"):
        assert all(check_gct(named_tensor(c, t)).values()), t


@pytest.mark.parametrize("name", EX_NAMES)
def test_criterion_6_projective_axiom_failure(charts, name):
    axioms = check_gct(projective(charts[name]))
    assert axioms["block_interchange"] is False


@pytest.mark.parametrize("name", ["flat3", "flat4", "flat5"])
def test_criterion_6_projective_flat_vanishes(charts, name):
    assert projective(charts[name]).is_zero()


@pytest.mark.parametrize("name", list_builtins())
def test_criterion_6_metric_parallel(charts, name):
    c = charts[name]
    assert covariant_derivative(c, c.metric_tensor()).is_zero()


def test_criterion_6_theorem_residual_for_all_chaki_solutions(charts):
    found = 0
    for name in EX_NAMES:
        c = charts[name]
        for tname in ("R", "C", "K", "conh", "P", "S"):
            out = solve_chaki(c, tname, key=tname)
            if not out.consistent or out.degenerate:
                continue
            found += 1
            phi = oneform(c, out.space.particular)
            alpha = oneform(c, [2 * p for p in phi])
            assert theorem_residual(c, tname, alpha, phi).is_zero(), \
                (name, tname)
    assert found >= 2  # at least the two Chaki pseudosymmetric charts


# ---------------------------------------------------------------------------
# Criterion 7: the randomized oracle.
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def reports(charts):
    return {name: classify(charts[name]) for name in EX_NAMES}


def test_criterion_7_zero_disagreements(reports):
    for name, report in reports.items():
        assert report.oracle.samples == 50 and report.oracle.seed == 42
        assert report.oracle.disagreements == 0, name
        assert report.oracle.inconclusive == 0, name
        assert report.oracle.identities > 0, name


def test_criterion_7_extra_identities_from_combinations(charts):
    # The long combination identities of criteria 1 and 5, re-checked
    # numerically componentwise.
    c1 = charts["ex5_1"]
    ctx = c1.ctx
    S, S2 = ricci(c1), ricci_square(c1)
    g = c1.metric_tensor()
    gens = [kulkarni_nomizu(S, S), kulkarni_nomizu(S, S2),
            kulkarni_nomizu(S2, S2)]
    coeffs = [Fraction(65, 36) * ctx.parse("exp(x1)"),
              -Fraction(34, 9) * ctx.parse("exp(2*x1)"),
              Fraction(20, 9) * ctx.parse("exp(3*x1)")]
    rows = []
    target = riemann(c1)
    for idx in np.ndindex(target.array.shape):
        cfs = {j: t.array[idx] for j, t in enumerate(gens)
               if not t.array[idx].is_zero}
        if cfs or not target.array[idx].is_zero:
            rows.append((cfs, target.array[idx]))
    identity = Identity("curvature-combination", rows[:48], coeffs)
    report = Report(chart_name="ex5_1", dim=5, verdicts=[],
                    identities=[identity])
    summary = oracle_crosscheck(report, c1, samples=50, seed=42)
    assert summary.disagreements == 0 and summary.inconclusive == 0


def test_criterion_7_perturbations_detected(reports, charts):
    # Ten deliberately corrupted identities, each corrupting a value that
    # occurs in a retained row; every one must produce a disagreement.
    pool = []
    for name in EX_NAMES:
        for identity in reports[name].identities:
            occurring = sorted({j for cfs, _ in identity.rows
                                for j, e in cfs.items() if not e.is_zero})
            if occurring:
                pool.append((name, identity, occurring[0]))
    assert len(pool) >= 10
    corrupted_checked = 0
    for name, identity, j in pool[:10]:
        values = list(identity.values)
        values[j] = values[j] + 1
        bad = Identity(identity.name + "~corrupt", identity.rows, values)
        report = Report(chart_name=name, dim=charts[name].n, verdicts=[],
                        identities=[bad])
        summary = oracle_crosscheck(report, charts[name], samples=50, seed=42)
        assert summary.disagreements >= 1, (name, identity.name)
        corrupted_checked += 1
    assert corrupted_checked == 10


# ---------------------------------------------------------------------------
# Criterion 8: determinism of structured reports.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", list_builtins())
def test_criterion_8_determinism(name):
    # Fresh charts both times: byte-identical structured reports.
    r1 = classify(builtin(name).to_chart(), seed=42)
    r2 = classify(builtin(name).to_chart(), seed=42)
    assert render_report(r1, "json") == render_report(r2, "json")
