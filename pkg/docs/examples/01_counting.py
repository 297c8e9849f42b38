"""Counting hypergraphs by excess.

Closed forms for trees and forests, Lagrange inversion for everything else,
and a brute-force check on a tiny vertex set.
"""
# %%
from excessum import count_components, count_forests, count_hypertrees, count_rooted_hypertrees
from excessum.counts import count_hypercycles_closed, count_hypercycles_corrected
from excessum.hypergraphs import connected_excess_table

# %% Trees: Cayley for b = 2, its hypergraph analogue for b = 3.
print("labelled trees on 4 vertices:", count_hypertrees(2, 3))
print("rooted 3-uniform hypertrees with 2 edges:", count_rooted_hypertrees(3, 2))
print("forests of 3 rooted 3-uniform trees, no edges:", count_forests(3, 0, 2))

# %% Connected structures of any excess come from the smooth series H_l.
for ell in (-1, 0, 1, 2):
    print(f"b=2, n=6, excess {ell}:", count_components(2, ell, 6))

# %% Exhaustive cross-check over all 2^15 graphs on 6 vertices.
table = connected_excess_table(2, 6)
assert all(count_components(2, ell, 6) == c for ell, c in table.items())
print("brute force agrees on", len(table), "excess values")

# %% The closed hypercycle sum: the printed version double counts cycles.
print("closed sum, b=3 s=2:", count_hypercycles_closed(3, 2))
print("with the 1/j correction:", count_hypercycles_corrected(3, 2), "=", count_components(3, 0, 4))
