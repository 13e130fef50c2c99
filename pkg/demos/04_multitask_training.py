"""Training two classifiers at once without ever computing the losses.

Points in the square get two labels: the quadrant they fall in and
whether they sit inside the unit circle.  One parameter vector carries a
softmax head for the quadrants and a logistic head for the circle; the
two cross-entropies form a bi-objective problem whose gradients touch
disjoint parameter blocks.  The adaptive solver trains both heads using
gradients only.
"""

from mograd import generate_dataset, run_multitask

KIND = "quadrants"
ITERS = 400
N = 4000

dataset = generate_dataset(KIND, N=N, seed=0)
print(f"{KIND}: {N} points, {dataset.n_params} parameters,")
print(f"  train {dataset.train_idx.size} / test {dataset.test_idx.size}")
print(f"  class balance task 2 (circle): {dataset.labels_task2.mean():.3f}\n")

for solver in ("adagrad", "descent"):
    result = run_multitask(KIND, solver, iters=ITERS, seed=0, N=N)
    record = result.record
    print(f"{solver}:")
    print(f"  best min test accuracy  {result.best_min_accuracy:.4f}")
    print(f"  reached at iteration    {result.best_iteration}")
    print(f"  gradient evals there    {result.evals_at_best[0]}")
    print(f"  objective evals there   {result.evals_at_best[1]}")
    print(f"  wall time               {record.wall_time:.2f}s")
    marks = [0, 10, 50, 100, ITERS]
    print("  iteration : min test accuracy")
    for k in marks:
        if k in result.test_accuracy:
            print(f"  {k:>9} : {result.test_accuracy[k][2]:.4f}")
    print()
