"""Small-momentum density structure factor: a flat band between the edges.

At small momentum the density response is a step of height m/(k xi)
supported between eps2(k) and eps1(k); its frequency integral is exactly
k/xi.  No power-law singularity survives at the band edges in this limit.
"""

from nlll import LuttingerParams, dsf_step, epsilon_lower, epsilon_upper

params = LuttingerParams(xi=2.0, v=1.0, m_eff=1.0)
k = 0.3
lo, hi = epsilon_lower(k, params), epsilon_upper(k, params)
height = params.m_eff / (k * params.xi)

print(f"k = {k}, xi = {params.xi}")
print(f"band: [{lo:.4f}, {hi:.4f}]  width {hi - lo:.4f}")
print(f"height m/(k xi) = {height:.6f}")
print(f"integral height*width = {height * (hi - lo):.6f}  (= k/xi = {k / params.xi})")
print()
n = 13
for i in range(n):
    w = lo - 0.2 * (hi - lo) + (1.4 * (hi - lo)) * i / (n - 1)
    bar = "#" * int(round(dsf_step(w, k, params) / height * 40))
    print(f"  omega = {w:7.4f}  S = {dsf_step(w, k, params):8.4f}  {bar}")
