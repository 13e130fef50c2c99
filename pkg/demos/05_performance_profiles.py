"""Comparing the two solvers across the whole catalog with one table.

Every (problem, solver) cell runs to criticality or budget; its cost is
gradient evaluations plus objective evaluations divided by the problem
dimension.  The performance profile then reads: at ratio tau, which
fraction of problems did each solver finish within 10^tau times the
cost of the better one?
"""

import numpy as np

from mograd import budget_cost, list_problems, profile_from_records, run_experiment

# A reduced budget keeps the slowest cells (the ones that would run the
# full budget without reaching criticality) to a few seconds each.
problems = [name for name, _, _, origin in list_problems() if origin != "benchmark"]
records = run_experiment(
    {
        "problems": problems,
        "solvers": ["adagrad", "descent"],
        "seeds": [0],
        "budget": 10_000,
    }
)

print(f"{'problem':<18} {'solver':<8} {'status':<16} {'cost':>9}")
for r in records:
    print(
        f"{r.problem:<18} {r.solver:<8} {r.status.value:<16} {budget_cost(r):>9.2f}"
    )

table = profile_from_records(records)
print("\nfraction of problems solved within 10^tau of the best cost")
print(f"{'tau':>5}  " + "  ".join(f"{s:>8}" for s in table.solvers))
for tau in (0.0, 0.5, 1.0, 2.0, 4.0):
    i = int(np.argmin(np.abs(table.tau - tau)))
    row = "  ".join(f"{table.curves[s][i]:>8.3f}" for s in table.solvers)
    print(f"{table.tau[i]:>5.2f}  {row}")

print(
    "\ntau = 0 is the fraction of problems a solver wins outright;"
    "\nthe curve's right end is its overall solve fraction."
)
