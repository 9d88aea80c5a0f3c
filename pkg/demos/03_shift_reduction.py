"""Reduction of the high-energy-particle formfactor to the low-energy one.

The eigenstate with one quasiparticle far above the Fermi point, dressed by
a low-energy particle-hole cloud, maps onto a single composite
configuration.  Evaluating that composite exactly and dividing by the
factorized form -- smooth momentum factor times the cloud formfactor at the
shifted exponent a-1 -- leaves a deviation that vanishes like 1/p as the
quasiparticle moves up.  The empty-cloud case is an exact identity.
"""

import numpy as np

from nlll import ParticleHoleConfig, shift_reduction_check

A = 1.25
empty = ParticleHoleConfig((), ())
pair = ParticleHoleConfig((1,), (0,))
two_pair = ParticleHoleConfig((1, 2), (0, -1))

print(f"exponent a = {A}")
print(f"{'p':>7s} {'empty cloud':>14s} {'one pair':>14s} {'two pairs':>14s}")
ps = [10, 100, 1000, 10_000]
devs = []
for p in ps:
    d0 = shift_reduction_check(p, empty, A)
    d1 = shift_reduction_check(p, pair, A)
    d2 = shift_reduction_check(p, two_pair, A)
    devs.append(d1)
    print(f"{p:7d} {d0:14.3e} {d1:14.3e} {d2:14.3e}")

slope = np.polyfit(np.log(ps), np.log(devs), 1)[0]
print(f"\nfitted decay exponent of the one-pair deviation: {slope:+.4f} (expected -1)")
