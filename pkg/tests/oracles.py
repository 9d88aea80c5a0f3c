"""Independent reference implementations used only by the tests."""

from scipy.special import gamma as _gamma


def partition_count(m: int) -> int:
    """Number of integer partitions of m via the Euler pentagonal recurrence."""
    p = [1]
    for n in range(1, m + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p.append(total)
    return p[m]


def formfactor_direct(particles, holes, a: float) -> float:
    """Plain floating-point product evaluation of the formfactor formula.

    No log-domain guards; only valid where nothing overflows (small
    configurations, moderate a).
    """
    ps, qs = sorted(particles), sorted(holes)
    val = 1.0
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            val *= (ps[j] - ps[i]) * (qs[j] - qs[i])
    for p in ps:
        for q in qs:
            val /= p - q
    for p in ps:
        val *= _gamma(p + a) / (_gamma(p) * _gamma(a))
    for q in qs:
        val *= _gamma(1 - q - a) / (_gamma(1 - q) * _gamma(1 - a))
    return val
