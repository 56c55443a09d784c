# Randomized checks over small prime fields.
#
# Each trial draws an arrangement (or a multiset with repeats) from a generator
# seeded by (seed, trial), so any single trial can be replayed alone.

from foldideals.cli import cmd_sweep

report = cmd_sweep(p=7, k=3, n=6, trials=5, seed=1, amode="arrangement")
print("arrangements over GF(7):", report["verdicts"]["sweep"])
for name, row in report["results"]["tally"].items():
    print(f"   {name:30s} pass={row['pass']:4d} fail={row['fail']}")

report = cmd_sweep(p=5, k=3, n=6, trials=5, seed=1, amode="multiset")
print("\nmultisets over GF(5):", report["verdicts"]["sweep"])
for name, row in report["results"]["tally"].items():
    print(f"   {name:30s} pass={row['pass']:4d} fail={row['fail']}")

# A failing check would come with a line such as
#   foldideals sweep --p 7 --k 3 --n 6 --trials 5 --seed 1 --amode arrangement --only 3
# which reruns just that trial.
print("\nseconds:", report["timings"]["seconds"])
