"""Random greedy hypermatching on uniform random hypertrees."""
# %%
from excessum import Hypergraph, asympt_mean, exact_expectation, greedy_matching
from excessum.greedy import exact_mean_hypertrees, mean_series_coeffs, monte_carlo_mean

# %% One run, and the exact expectation on a path.
path = Hypergraph(4, 2, ((1, 2), (2, 3), (3, 4)))
print("one run:", greedy_matching(path, 1).matching, " exact mean:", exact_expectation(path))

# %% Mean over uniform trees: exact series, simulation, asymptotics.
n = 201
print("exact:", float(exact_mean_hypertrees(2, n)))
print("simulated:", monte_carlo_mean(2, n, 2000, seed=1))
print("asymptotic:", asympt_mean(2, -1, n))

# %% Leading constants for higher excess.
c = mean_series_coeffs(3, 3)
print("sigma at b=3:", [str(x) for x in c.sigma])
