"""Closed-form estimates against exact counts, compared in the log domain."""
# %%
from excessum import asymptotics as asy
from excessum.counts import count_components, count_hypercycles, count_rooted_hypertrees

# %% Rooted hypertrees: close already at s = 200.
for b in (2, 3):
    est = asy.asympt_rooted_hypertrees(b, 200)
    print(f"b={b} rooted, s=200: ratio {est.ratio_to(count_rooted_hypertrees(b, 200)):.4f}")

# %% Hypercycles converge like s^(-1/2).
for s in (50, 200, 800):
    print(f"unicyclic s={s}: ratio {asy.asympt_hypercycles(2, s).ratio_to(count_hypercycles(2, s)):.4f}")

# %% Complex components, excess 1.
for s in (50, 100, 150):
    print(f"b=2 excess 1, s={s}: ratio {asy.asympt_components(2, 1, s).ratio_to(count_components(2, 1, s - 1)):.4f}")

# %% Exact bounds around an exact count.
sb = asy.wright_bounds(2, 1, 40)
print("lower/exact", float(sb.lower / sb.exact), "upper/exact", float(sb.upper / sb.exact))
