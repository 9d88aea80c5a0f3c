"""Exact momentum-resolved sum rule of the particle-hole formfactors.

The squared formfactors of all particle-hole states at total momentum m
(one configuration per integer partition of m) sum to the closed form
Gamma(a^2 + m) / (Gamma(m+1) Gamma(a^2)).  Here both sides are computed
independently: the left by enumerating every configuration and evaluating
the determinant-times-gamma-ratio product, the right from log-gamma.
"""

from nlll import enumerate_configs, sum_rule_bruteforce, sum_rule_closed

for a in (0.7, 1.25):
    print(f"a = {a}   (a^2 = {a * a})")
    print(f"{'m':>3s} {'configs':>8s} {'brute force':>20s} {'closed form':>20s} {'rel err':>10s}")
    for m in range(0, 13):
        n = len(enumerate_configs(m))
        brute = sum_rule_bruteforce(m, a)
        closed = sum_rule_closed(m, a * a)
        print(f"{m:3d} {n:8d} {brute:20.15g} {closed:20.15g} "
              f"{abs(brute / closed - 1):10.2e}")
    print()
