"""Both solvers on the two-bowl problem whose Pareto set is known exactly.

The objectives are half squared distances to (1, 0) and (-1, 0); every
point of the segment between the centers is Pareto critical.  The
adaptive solver never evaluates an objective value, yet lands on the
segment; the line-search baseline does the same while paying objective
evaluations for its step sizes.
"""

import numpy as np

from mograd import quadratic_pair, run_adagrad, run_descent

np.set_printoptions(precision=8, suppress=True)

x0 = np.array([0.0, 1.0])

for runner in (run_adagrad, run_descent):
    problem = quadratic_pair(a=(1.0, 0.0), b=(-1.0, 0.0))
    record = runner(problem, x0=x0)
    t = record.trajectory
    print(f"{record.solver}:")
    print(f"  status            {record.status.value}")
    print(f"  iterations        {record.iterations}")
    print(f"  gradient evals    {record.gradient_evals}")
    print(f"  objective evals   {record.objective_evals}")
    print(f"  final point       {record.final_x}")
    print(f"  final omega       {t.omega[-1]:.3e}")
    label = "weight w_k" if record.solver == "adagrad" else "step alpha_k"
    print(f"  k   omega        {label}")
    for k in range(record.iterations):
        print(f"  {k}   {t.omega[k]:<11.4e}  {t.scale[k]:.6f}")
    print()

# The adaptive weight only ever grows, so step lengths shrink on their
# own: that is the whole line-search replacement.
problem = quadratic_pair()
record = run_adagrad(problem, x0=np.array([1.5, 1.5]))
w = record.trajectory.scale
print("adaptive weights are nondecreasing:", bool(np.all(np.diff(w) >= 0)))
print("weights:", w[: min(8, len(w))])
