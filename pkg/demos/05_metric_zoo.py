"""Walk the builtin metric collection and compare classifications.

The five nontrivial builtins realize different combinations of the
pseudosymmetry notions, which is the point of keeping them together:
Chaki-but-not-Deszcz, Deszcz-but-not-Chaki, both, and neither all occur.
"""

from curvzoo import builtin, classify, list_builtins, scalar_curvature

COLUMNS = ("chaki[R]", "deszcz[R;g]", "deszcz[R;S]", "recurrent[R]",
           "roter", "generalized_roter", "quasi_einstein")


def cell(report, name):
    try:
        verdict = report.verdict(name)
    except KeyError:
        return "-"
    return {True: "yes", False: "no", None: "outside-U"}[verdict.outcome]


names = [n for n in list_builtins() if n.startswith("ex")]
reports = {}
for name in names:
    # The check filter keeps this quick; the full battery adds weak symmetry,
    # recurrent-form conditions and the oracle pass.
    reports[name] = classify(builtin(name),
                             checks=["kappa", "chaki", "deszcz", "recurrent",
                                     "roter", "generalized_roter",
                                     "quasi_einstein"],
                             run_oracle=False)

width = max(len(c) for c in COLUMNS) + 2
print("metric   " + "".join(c.ljust(width) for c in COLUMNS))
for name in names:
    row = "".join(cell(reports[name], c).ljust(width) for c in COLUMNS)
    print(f"{name:9}{row}")

print("\nscalar curvatures:")
for name in names:
    chart = builtin(name).to_chart()
    print(f"  {name}: kappa = {scalar_curvature(chart)}")

print("\nwitnesses for the Deszcz charts:")
for name in ("ex5_2", "ex5_4", "ex5_5"):
    verdict = reports[name].verdict("deszcz[R;g]")
    if verdict.outcome:
        print(f"  {name}: R.R = ({verdict.witness}) Q(g,R)")
