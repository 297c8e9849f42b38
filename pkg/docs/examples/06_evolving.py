"""Adding random edges until the first cycle appears."""
# %%
from excessum import asympt_mean_evolving, exact_mean, forest_counts, simulate_first_cycle
from excessum.evolving import monte_carlo_mean

# %% Forest counts drive the exact expectation.
print(forest_counts(2, 4).f, "->", exact_mean(2, 4))

# %% One run, then many.
print(simulate_first_cycle(2, 10, 3).edges)
m = monte_carlo_mean(2, 30, 50_000, seed=2)
print(f"n=30: simulated {m.mean:.3f} +- {m.stderr:.3f}, exact {float(exact_mean(2, 30)):.3f}")

# %% Compare with 2n/(3b(b-1)).
for n in (50, 100, 200):
    print(n, float(exact_mean(2, n)) / asympt_mean_evolving(2, n))
