"""A bijection between rooted hypertree forests and simple codes, and uniform sampling."""
# %%
from collections import Counter

import numpy as np

from excessum import ForestCode, decode, encode, sample_forest

# %% Decode a code into a forest and encode it back.
code = ForestCode(
    frozenset({5, 9, 13, 16}),
    13,
    ((1, 22), (2, 17), (3, 19), (4, 8), (6, 7), (10, 15), (11, 18), (12, 14), (20, 21)),
    (21, 18, 13, 13, 4, 18, 21, 7),
)
forest = decode(code, 3, 22)
print(forest.to_json())
assert encode(forest) == code

# %% Uniform sampling: draw a random code, decode it.
rng = np.random.default_rng(0)
tally = Counter(sample_forest(2, 3, 0, rng=rng).dumps() for _ in range(6400))
print(len(tally), "distinct rooted trees on 4 vertices, counts between", min(tally.values()), "and", max(tally.values()))
