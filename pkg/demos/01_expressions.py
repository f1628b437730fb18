"""Tour of the exact scalar kernel.

Every scalar in curvzoo is a canonical rational function in chart atoms:
coordinates, exponentials of coordinates, and named constants.  Canonical
means structural equality decides mathematical equality, which is what the
classifiers' zero tests rest on.
"""

from fractions import Fraction

from curvzoo import Context, evaluate_rational

ctx = Context(["x1", "x2"], params=["a"])

print("== parsing and canonical forms ==")
e = ctx.parse("exp(2*x1)/(1+exp(x1))")
print("exp(2*x1)/(1+exp(x1))      ->", e)

collapsed = ctx.parse("(x1+1)^2 - x1^2 - 2*x1 - 1")
print("(x1+1)^2 - x1^2 - 2*x1 - 1 ->", collapsed, "(canonical zero)")

kappa = ctx.parse("7/2 * exp(-x1)")
print("7/2 * exp(-x1)             ->", kappa)

print("\n== arithmetic is total and exact ==")
t = ctx.exponential("x1")
print("t * (1/t)      =", t * (1 / t))
print("t - t          =", t - t)
print("(1+t)^3 / (1+t)=", (1 + t) ** 3 / (1 + t))

print("\n== differentiation ==")
# d(exp(x))/dx = exp(x); parameters are constants.
print("d/dx1 exp(x1)        =", ctx.parse("exp(x1)").diff("x1"))
print("d/dx1 x1*exp(x1)     =", ctx.parse("x1*exp(x1)").diff("x1"))
print("d/dx1 a^2            =", ctx.parse("a^2").diff("x1"))
print("d/dx1 -3/(2*x1^3)    =", ctx.parse("-3/(2*x1^3)").diff("x1"))

print("\n== exact rational evaluation ==")
# Atoms are algebraically independent: exp(x1) gets its own value, which is
# exactly what a Schwartz-Zippel style zero test needs.
atom = {a.name: a for a in ctx.atoms}
point = {atom["x1"]: Fraction(1), atom["exp(x1)"]: Fraction(3)}
e = ctx.parse("exp(x1)/(1+x1)")
print("exp(x1)/(1+x1) at x1=1, exp(x1)=3 ->", evaluate_rational(e, point))

print("\n== printing round-trips ==")
for src in ("7/2 * exp(-x1)", "3*(2+exp(x1)) / (2*(1+exp(x1))^2)"):
    val = ctx.parse(src)
    assert ctx.parse(str(val)) == val
    print(f"{src!r:45} -> {val}")
