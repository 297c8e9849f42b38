"""Smooth series of excess l >= 1 and their leading constants."""
# %%
from excessum import compute_f, to_comb_form, wright_coeffs

# %% f_l is a Laurent polynomial in theta; H_l(t) = f_l(theta(t)) / t^l.
f1 = compute_f(1, 2)
print("f_1 for graphs:", f1)

# %% The combinatorial form has non-negative coefficients.
form = to_comb_form(compute_f(2, 3), 2, 3)
print("A_{2,p} at b=3:", [str(a) for a in form.A])

# %% Deepest pole = lambda_l (b-1)^(2l) / (3l).
wc = wright_coeffs(4, 3)
for ell in range(1, 5):
    assert compute_f(ell, 3).coeff(-3 * ell) == wc.leading(ell)
print("lambda:", [str(x) for x in wc.lam])
