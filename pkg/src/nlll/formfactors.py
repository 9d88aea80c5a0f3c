"""Universal low-energy formfactors of exponential operators.

The matrix element between the ground state and a particle-hole excited
state with particles at integer positions p_i >= 1 and holes at q_i <= 0
(units of 2*pi/L above/below the Fermi point) is

    F_a(p, q) = prod_{i<j}(p_i-p_j) * prod_{i>j}(q_i-q_j)
                / prod_{i,j}(p_i-q_j)
                * prod_i Gamma(p_i+a) / (Gamma(p_i) Gamma(a))
                * prod_i Gamma(1-q_i-a) / (Gamma(1-q_i) Gamma(1-a)).

Everything here is evaluated in log-signed arithmetic: gamma ratios at
negative arguments and Cauchy-determinant products overflow double
precision long before the physically interesting configuration sizes do.
The difference products are taken in the all-positive canonical order
(particles and holes each sorted); the overall sign of F_a relative to any
other ordering convention is a pure state-phase gauge, |F_a| is not.

Sums of |F_a|^2 at fixed total momentum m obey the closed form
F(m, a^2) = Gamma(a^2+m) / (Gamma(m+1) Gamma(a^2)), which this module can
check by exhaustive enumeration (the configurations at momentum m are in
bijection with the integer partitions of m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from scipy.special import gammaln, gammasgn

DEFAULT_ENUM_CAP = 40


class GammaPoleError(ValueError):
    """A gamma-function argument hit a non-positive integer."""


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def loggamma_signed(x: float) -> tuple[float, int]:
    """(log |Gamma(x)|, sign of Gamma(x)); raises on poles."""
    if _is_nonpositive_integer(x):
        raise GammaPoleError(f"Gamma pole at argument {x:g}")
    return float(gammaln(x)), int(gammasgn(x))


@dataclass(frozen=True)
class LogSignedValue:
    """A real number stored as (log of absolute value, sign).

    sign is 0 exactly for the zero value (log_abs is -inf by convention);
    multiplication adds log_abs and multiplies signs.
    """

    log_abs: float
    sign: int

    @classmethod
    def one(cls) -> "LogSignedValue":
        return cls(0.0, 1)

    @classmethod
    def zero(cls) -> "LogSignedValue":
        return cls(float("-inf"), 0)

    @classmethod
    def from_float(cls, x: float) -> "LogSignedValue":
        if x == 0.0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    def __mul__(self, other: "LogSignedValue") -> "LogSignedValue":
        if self.sign == 0 or other.sign == 0:
            return self.zero()
        return LogSignedValue(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "LogSignedValue") -> "LogSignedValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by log-signed zero")
        if self.sign == 0:
            return self.zero()
        return LogSignedValue(self.log_abs - other.log_abs, self.sign * other.sign)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    @property
    def abs_squared(self) -> float:
        if self.sign == 0:
            return 0.0
        return math.exp(2.0 * self.log_abs)


@dataclass(frozen=True)
class ParticleHoleConfig:
    """Particle-hole excitation near one Fermi point.

    ``particles`` are distinct integers > fermi_offset, ``holes`` distinct
    integers <= fermi_offset, equal counts; both are stored sorted
    ascending (inputs in any order are canonicalized).  fermi_offset = 0 is
    the standard enumeration; the hole-channel enumeration lives at
    fermi_offset = 2.
    """

    particles: tuple[int, ...]
    holes: tuple[int, ...]
    fermi_offset: int = 0

    def __post_init__(self) -> None:
        parts = tuple(sorted(int(p) for p in self.particles))
        holes = tuple(sorted(int(q) for q in self.holes))
        object.__setattr__(self, "particles", parts)
        object.__setattr__(self, "holes", holes)
        if len(parts) != len(holes):
            raise ValueError("particle and hole counts must be equal")
        if len(set(parts)) != len(parts) or len(set(holes)) != len(holes):
            raise ValueError("particle/hole positions must be distinct")
        off = self.fermi_offset
        if parts and parts[0] <= off:
            raise ValueError(f"particle positions must exceed {off}")
        if holes and holes[-1] > off:
            raise ValueError(f"hole positions must be <= {off}")

    @property
    def n(self) -> int:
        return len(self.particles)

    def total_momentum(self) -> int:
        off = self.fermi_offset
        return sum(p - off for p in self.particles) - sum(q - off for q in self.holes)


def _distinct_parts(total: int, count: int, min_part: int) -> Iterator[tuple[int, ...]]:
    """Ascending tuples of `count` distinct integers >= min_part summing to total."""
    if count == 0:
        if total == 0:
            yield ()
        return
    # remaining count-1 parts are >= first+1 and distinct
    first = min_part
    while True:
        rest_min = (count - 1) * (first + 1) + (count - 1) * (count - 2) // 2
        if first + rest_min > total:
            return
        for rest in _distinct_parts(total - first, count - 1, first + 1):
            yield (first,) + rest
        first += 1


def enumerate_configs(m: int, cap: int = DEFAULT_ENUM_CAP) -> list[ParticleHoleConfig]:
    """All configurations with total momentum m, in lexicographic
    (n, particles, holes) order.

    The count equals the number of integer partitions of m (Frobenius
    correspondence), which grows fast; `cap` bounds the accepted m.
    """
    if not isinstance(m, int) or m < 0:
        raise ValueError("m must be a nonnegative integer")
    if m > cap:
        raise ValueError(f"m={m} exceeds the enumeration cap {cap}")
    out: list[ParticleHoleConfig] = []
    n = 0
    while n * n <= m:
        sp_min = n * (n + 1) // 2
        sh_min = n * (n - 1) // 2
        for sp in range(sp_min, m - sh_min + 1):
            for parts in _distinct_parts(sp, n, 1):
                for hvals in _distinct_parts(m - sp, n, 0):
                    holes = tuple(-h for h in reversed(hvals))
                    out.append(ParticleHoleConfig(parts, holes))
        n += 1
    out.sort(key=lambda c: (c.n, c.particles, c.holes))
    return out


def hole_channel_configs(m: int, cap: int = DEFAULT_ENUM_CAP) -> list[ParticleHoleConfig]:
    """Enumeration entering the hole-channel sums: positions shifted by +2.

    The two extra particles sitting at the Fermi point displace the
    admissible quantum numbers to p_i > 2, q_i <= 2; relabeling by -2 is a
    bijection onto :func:`enumerate_configs`, so the sum over these states
    is the standard low-energy sum.
    """
    shifted = []
    for cfg in enumerate_configs(m, cap):
        shifted.append(
            ParticleHoleConfig(
                tuple(p + 2 for p in cfg.particles),
                tuple(q + 2 for q in cfg.holes),
                fermi_offset=2,
            )
        )
    return shifted


def _check_formfactor_poles(config: ParticleHoleConfig, a: float) -> None:
    if a == math.floor(a):
        if a <= 0:
            raise GammaPoleError(f"Gamma(a) pole at a={a:g}")
        raise GammaPoleError(f"Gamma(1-a) pole at a={a:g}")
    for q in config.holes:
        if _is_nonpositive_integer(1.0 - q - a):
            raise GammaPoleError(f"Gamma(1-q-a) pole at q={q}, a={a:g}")


def formfactor(config: ParticleHoleConfig, a: float) -> LogSignedValue:
    """Evaluate F_a for one configuration in log-signed arithmetic.

    The empty configuration gives exactly 1.  Integer a is refused for
    nonempty configurations: Gamma(a) or Gamma(1-a) sits on a pole there,
    and the finite free-fermion-like limits are not taken.
    """
    if config.fermi_offset != 0:
        raise ValueError("formfactor is defined on fermi_offset=0 configurations")
    if config.n == 0:
        return LogSignedValue.one()
    _check_formfactor_poles(config, a)

    parts, holes = config.particles, config.holes
    log_abs = 0.0
    sign = 1
    # Cauchy block, canonical all-positive ordering
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            log_abs += math.log(parts[j] - parts[i])
            log_abs += math.log(holes[j] - holes[i])
    for p in parts:
        for q in holes:
            log_abs -= math.log(p - q)
    # smooth one-body factors
    lg_a, sg_a = loggamma_signed(a)
    lg_1a, sg_1a = loggamma_signed(1.0 - a)
    for p in parts:
        lg, sg = loggamma_signed(p + a)
        log_abs += lg - gammaln(p) - lg_a
        sign *= sg * sg_a
    for q in holes:
        lg, sg = loggamma_signed(1.0 - q - a)
        log_abs += lg - gammaln(1 - q) - lg_1a
        sign *= sg * sg_1a
    return LogSignedValue(log_abs, sign)


def sum_rule_bruteforce(m: int, a: float, cap: int = DEFAULT_ENUM_CAP) -> float:
    """Sum of |F_a|^2 over every configuration at total momentum m."""
    return sum(formfactor(cfg, a).abs_squared for cfg in enumerate_configs(m, cap))


def sum_rule_closed(m: int, a2: float) -> float:
    """Closed form Gamma(a2+m) / (Gamma(m+1) Gamma(a2)) of the momentum-m sum."""
    if not isinstance(m, int) or m < 0:
        raise ValueError("m must be a nonnegative integer")
    if _is_nonpositive_integer(a2):
        raise GammaPoleError(f"Gamma(a^2) pole at a^2={a2:g}")
    lg_num, sg_num = loggamma_signed(a2 + m) if not _is_nonpositive_integer(a2 + m) else (0.0, 0)
    if sg_num == 0:
        return 0.0
    lg_a2, sg_a2 = loggamma_signed(a2)
    return sg_num * sg_a2 * math.exp(lg_num - gammaln(m + 1) - lg_a2)


def smooth_factor_f(kbar: float, a: float) -> float:
    """Smooth momentum factor f(kbar) = Gamma(kbar+a) / (kbar Gamma(kbar) Gamma(a)).

    kbar = L k / 2pi.  The conjugate factor of the hole channels is obtained
    by calling with -a.  For kbar >> 1 this tends to the power law
    kbar^(a-1) / Gamma(a), see :func:`smooth_factor_f_asymptotic`.
    """
    if not (kbar > 0 and math.isfinite(kbar)):
        raise ValueError("kbar must be positive and finite")
    if _is_nonpositive_integer(a):
        raise GammaPoleError(f"Gamma(a) pole at a={a:g}")
    lg_ka, sg_ka = loggamma_signed(kbar + a)
    lg_a, sg_a = loggamma_signed(a)
    return sg_ka * sg_a * math.exp(lg_ka - gammaln(kbar) - lg_a - math.log(kbar))


def smooth_factor_f_asymptotic(kbar: float, a: float) -> float:
    """Large-kbar limit kbar^(a-1) / Gamma(a) of :func:`smooth_factor_f`."""
    if not (kbar > 0 and math.isfinite(kbar)):
        raise ValueError("kbar must be positive and finite")
    lg_a, sg_a = loggamma_signed(a)
    return sg_a * math.exp((a - 1.0) * math.log(kbar) - lg_a)


def shift_reduction_check(p: int, config: ParticleHoleConfig, a: float) -> float:
    """Relative deviation of the composite formfactor from its reduction.

    The eigenstate with one high-energy particle at position p on top of
    the low-energy configuration maps, once the extra-particle bookkeeping
    is absorbed, onto the composite configuration with particles
    {p-1} u {p_i-1} and holes {q_i-1} u {0}.  For p >> p_i, q_i the full
    evaluation factorizes into the smooth factor at the shifted position
    times the low-energy formfactor at exponent a-1:

        |F_a(composite)|  ~  |f(p-1)| * |F_{a-1}(p_i, q_i)|.

    Returned is | |full| / |f*(reduced)| - 1 |, which is zero up to
    roundoff for the empty configuration and decays like 1/p otherwise.
    Magnitudes are compared: the relative sign between the two sides is an
    ordering-convention gauge, alternating with the pair count.

    A low-energy particle at position 1 produces a composite particle at
    position 0 coinciding with the bookkeeping hole at 0; the pair
    annihilates (the exact limit of the defining formula) before
    evaluation.
    """
    if config.fermi_offset != 0:
        raise ValueError("shift reduction is defined on fermi_offset=0 configurations")
    if not isinstance(p, int) or p < 2:
        raise ValueError("p must be an integer >= 2")
    if config.particles and p <= max(config.particles):
        raise ValueError("p must exceed every particle position in the configuration")

    comp_parts = [p - 1] + [pi - 1 for pi in config.particles]
    comp_holes = [qi - 1 for qi in config.holes] + [0]
    if 0 in comp_parts:
        comp_parts.remove(0)
        comp_holes.remove(0)
    composite = ParticleHoleConfig(tuple(comp_parts), tuple(comp_holes))

    full = formfactor(composite, a)
    low = formfactor(config, a - 1.0)
    fsm = smooth_factor_f(float(p - 1), a)
    if full.sign == 0 or low.sign == 0 or fsm == 0.0:
        raise ValueError("reduction ratio undefined: a factor is exactly zero")
    log_ratio = full.log_abs - (math.log(abs(fsm)) + low.log_abs)
    return abs(math.expm1(log_ratio))
