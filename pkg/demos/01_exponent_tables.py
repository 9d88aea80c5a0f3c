"""Exponent sets for every channel across the interaction range.

Each correlator channel (fermion spectral density at either frequency sign,
the density correlator near twice the Fermi momentum, the boson spectral
density) maps to one set of edge exponents.  The combination
-1 + 2a + delta1^2 + delta2^2 must reproduce the channel's scaling
dimension alpha for the system-size dependence to drop out of the spectral
sums; the residual column shows that cancellation holding to machine
precision.  Rows sitting on gamma-function poles (the free-fermion point
xi = 1, for instance) are flagged; they can be probed with xi = 1 +/- 1e-6.
"""

from nlll import all_channels, exponents_for_channel

HEAD = f"{'channel':24s} {'xi':>6s} {'a':>9s} {'d1':>9s} {'d2':>9s} " \
       f"{'alpha':>9s} {'mu':>9s} {'residual':>9s}  flag"

print(HEAD)
print("-" * len(HEAD))
for xi in (0.25, 0.5, 1.0, 2.0, 4.0):
    for channel in all_channels():
        e = exponents_for_channel(channel, xi)
        flag = e.degenerate_reason() or ""
        print(f"{channel.name:24s} {xi:6.2f} {e.a:9.5f} {e.delta1:9.5f} "
              f"{e.delta2:9.5f} {e.alpha:9.5f} {e.mu:9.5f} "
              f"{e.cancellation_residual():9.1e}  {flag}")
    print()
