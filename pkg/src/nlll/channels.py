"""Physical parameters and threshold-exponent sets for the supported channels.

A "channel" selects which dynamical correlator is being probed (fermion
spectral density at either sign of the frequency, density correlator near
twice the Fermi momentum, boson spectral density) and which edge of its
support (particle or hole branch).  Each channel maps to one set of
exponents (a, delta1, delta2, alpha, mu) controlling both the finite-size
formfactor sums and the continuum closed forms in :mod:`nlll.spectral`.

Conventions used throughout:

* ``delta1``/``delta2`` always hold the *effective* right/left exponents of
  the channel.  For hole branches these are the tilded values
  (2 - delta1_particle, delta2_particle); the raw particle values are
  recoverable as ``2 - delta1, delta2``.
* the formfactor smooth-function exponent enters with a minus sign on hole
  branches (``a_signed``).
* negative-frequency channels are parameterized by |omega|; the left-branch
  fermion kinds carry their own exponent lists, while the boson kinds swap
  particle/hole exponent sets.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class DegenerateChannelError(ValueError):
    """A needed gamma-function argument sits on a non-positive integer pole."""


class ChannelKind(enum.Enum):
    FERMION_PARTICLE = "fermion_particle"
    FERMION_HOLE = "fermion_hole"
    FERMION_LEFT_PARTICLE = "fermion_left_particle"
    FERMION_LEFT_HOLE = "fermion_left_hole"
    DENSITY_2PF_PARTICLE = "density_2pf_particle"
    DENSITY_2PF_HOLE = "density_2pf_hole"
    BOSON_PARTICLE = "boson_particle"
    BOSON_HOLE = "boson_hole"


class OmegaSign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Branch(enum.Enum):
    """Dispersion branch of the high-energy excitation.

    UPPER: eps1(k) = v k + k^2/2m (particle edges).
    LOWER: eps2(k) = v k - k^2/2m (hole edges).
    """

    UPPER = "upper"
    LOWER = "lower"


_LEFT_KINDS = frozenset({ChannelKind.FERMION_LEFT_PARTICLE, ChannelKind.FERMION_LEFT_HOLE})
_BOSON_KINDS = frozenset({ChannelKind.BOSON_PARTICLE, ChannelKind.BOSON_HOLE})
_HOLE_KINDS = frozenset(
    {
        ChannelKind.FERMION_HOLE,
        ChannelKind.FERMION_LEFT_HOLE,
        ChannelKind.DENSITY_2PF_HOLE,
        ChannelKind.BOSON_HOLE,
    }
)

_BOSON_SWAP = {
    ChannelKind.BOSON_PARTICLE: ChannelKind.BOSON_HOLE,
    ChannelKind.BOSON_HOLE: ChannelKind.BOSON_PARTICLE,
}


@dataclass(frozen=True)
class ChannelSpec:
    """Correlator/branch selector.

    ``omega_sign`` is derived from the kind when not given: the left-branch
    fermion kinds are the negative-frequency case, everything else defaults
    to positive frequency.  Boson kinds may be requested at negative
    frequency, which swaps the particle/hole exponent sets (the negative-
    frequency boson edge exponents coincide with the opposite branch at
    positive frequency).
    """

    kind: ChannelKind
    omega_sign: OmegaSign = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not isinstance(self.kind, ChannelKind):
            raise ValueError(f"invalid channel kind: {self.kind!r}")
        if self.omega_sign is None:
            derived = OmegaSign.NEGATIVE if self.kind in _LEFT_KINDS else OmegaSign.POSITIVE
            object.__setattr__(self, "omega_sign", derived)
            return
        if self.kind in _LEFT_KINDS and self.omega_sign is not OmegaSign.NEGATIVE:
            raise ValueError("left-branch channels are negative-frequency only")
        if (
            self.omega_sign is OmegaSign.NEGATIVE
            and self.kind not in _LEFT_KINDS
            and self.kind not in _BOSON_KINDS
        ):
            raise ValueError(
                "negative frequency for fermions is the fermion_left_* kinds; "
                "only boson kinds support an explicit negative omega_sign"
            )

    @classmethod
    def from_name(cls, name: str, omega_sign: str | None = None) -> "ChannelSpec":
        try:
            kind = ChannelKind(name.strip().lower().replace("-", "_"))
        except ValueError:
            valid = ", ".join(k.value for k in ChannelKind)
            raise ValueError(f"unknown channel {name!r}; expected one of: {valid}") from None
        sign = OmegaSign(omega_sign.strip().lower()) if omega_sign else None
        return cls(kind, sign)

    @property
    def effective_kind(self) -> ChannelKind:
        """Kind actually used for exponents (boson negative-frequency swap)."""
        if self.kind in _BOSON_KINDS and self.omega_sign is OmegaSign.NEGATIVE:
            return _BOSON_SWAP[self.kind]
        return self.kind

    @property
    def is_hole(self) -> bool:
        return self.effective_kind in _HOLE_KINDS

    @property
    def name(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class LuttingerParams:
    """Physical inputs.

    xi    : dimensionless Luttinger parameter (> 0)
    v     : sound velocity (> 0)
    m_eff : band-curvature mass (> 0)
    L     : system length (> 0); only finite-size operations use it directly
    c0    : prefactor of the leading equal-time Green-function asymptotics;
            converted into the finite-size normalization via
            :func:`nlll.spectral.prefactor_from_c0`
    ff_norm : direct value of L^alpha |<1|psi+|0>|^2, mutually exclusive
            with c0

    Dimensional consistency of (v, m_eff, L, k) is the caller's contract;
    no unit system is imposed.
    """

    xi: float
    v: float = 1.0
    m_eff: float = 1.0
    L: float = 2.0 * math.pi * 1.0e3
    c0: float | None = None
    ff_norm: float | None = None

    def __post_init__(self) -> None:
        for fname in ("xi", "v", "m_eff", "L"):
            val = getattr(self, fname)
            if not (isinstance(val, (int, float)) and math.isfinite(val) and val > 0):
                raise ValueError(f"{fname} must be a positive finite number, got {val!r}")
        if self.c0 is not None and self.ff_norm is not None:
            raise ValueError("c0 and ff_norm are mutually exclusive; give at most one")
        if self.c0 is not None and self.c0 <= 0:
            raise ValueError("c0 must be > 0")
        if self.ff_norm is not None and self.ff_norm <= 0:
            raise ValueError("ff_norm must be > 0")


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


@dataclass(frozen=True)
class ExponentSet:
    """Exponents of one channel at fixed xi.

    ``alpha`` comes from the closed per-family form ((xi + 1/xi)/2 for
    fermions, 2/xi for the 2p_F density channel, xi/2 for bosons); the
    combination -1 + 2*a_signed + delta1^2 + delta2^2 must reproduce it to
    1e-12, which is the operational form of the L-cancellation condition.
    ``mu = 1 - delta1^2 - delta2^2`` is the threshold exponent; negative
    values mean a vanishing edge instead of a divergence.
    """

    a: float
    delta1: float
    delta2: float
    alpha: float
    mu: float
    branch: Branch
    hole: bool

    @property
    def beta1(self) -> float:
        return self.delta1 * self.delta1

    @property
    def beta2(self) -> float:
        return self.delta2 * self.delta2

    @property
    def a_signed(self) -> float:
        """Smooth-factor exponent: +a on particle branches, -a on hole branches."""
        return -self.a if self.hole else self.a

    def cancellation_residual(self) -> float:
        return abs(self.alpha - (-1.0 + 2.0 * self.a_signed + self.beta1 + self.beta2))

    def degenerate_reason(self) -> str | None:
        """Name of the first gamma argument resting on a pole, if any.

        Checks the arguments the evaluation pipeline actually feeds to the
        gamma function: a_signed (smooth factor and continuum prefactor),
        1 - a_signed (conjugate hole factor), delta1^2 and delta2^2 (the
        low-energy sum-rule marginals).  Exact comparison on purpose: probe
        values like xi = 1 +/- 1e-6 must pass.
        """
        checks = (
            ("Gamma(a)", self.a_signed),
            ("Gamma(1-a)", 1.0 - self.a_signed),
            ("Gamma(delta1^2)", self.beta1),
            ("Gamma(delta2^2)", self.beta2),
        )
        for label, val in checks:
            if _is_nonpositive_integer(val):
                return f"{label} pole: argument {val:g}"
        return None

    @property
    def is_degenerate(self) -> bool:
        return self.degenerate_reason() is not None


def exponents_for_channel(channel: ChannelSpec, xi: float) -> ExponentSet:
    """Exponent set of ``channel`` at Luttinger parameter ``xi``.

    Degenerate parameter points (gamma poles, e.g. the free-fermion point
    xi = 1) still return their exponent set; the pole is reported through
    :meth:`ExponentSet.degenerate_reason` and enforced by the operations
    that actually evaluate gamma functions.
    """
    if not (isinstance(xi, (int, float)) and math.isfinite(xi) and xi > 0):
        raise ValueError(f"xi must be a positive finite number, got {xi!r}")
    kind = channel.effective_kind
    sq = math.sqrt(xi)
    hole = channel.is_hole

    if kind in (ChannelKind.FERMION_PARTICLE, ChannelKind.FERMION_HOLE):
        a = 0.5 * (sq + 1.0 / sq)
        d1, d2 = 1.0 - a, 0.5 * (sq - 1.0 / sq)
        alpha = 0.5 * (xi + 1.0 / xi)
    elif kind in _LEFT_KINDS:
        a = 0.5 * (1.0 / sq - sq)
        d1 = 0.5 * (sq + 1.0 / sq)
        d2 = 1.0 - a  # hole branch tilts to 1 + a below
        alpha = 0.5 * (xi + 1.0 / xi)
    elif kind in (ChannelKind.DENSITY_2PF_PARTICLE, ChannelKind.DENSITY_2PF_HOLE):
        a = 1.0 / sq
        d1, d2 = 1.0 - 1.0 / sq, 1.0 / sq
        alpha = 2.0 / xi
    else:  # boson
        a = 0.5 * sq
        d1, d2 = 1.0 - 0.5 * sq, 0.5 * sq
        alpha = 0.5 * xi

    if hole:
        if kind in _LEFT_KINDS:
            delta1, delta2 = d1, 1.0 + a
        else:
            delta1, delta2 = 2.0 - d1, d2
    else:
        delta1, delta2 = d1, d2

    mu = 1.0 - delta1 * delta1 - delta2 * delta2
    branch = Branch.LOWER if hole else Branch.UPPER
    return ExponentSet(a=a, delta1=delta1, delta2=delta2, alpha=alpha, mu=mu,
                       branch=branch, hole=hole)


def epsilon_upper(k: float, params: LuttingerParams) -> float:
    """eps1(k) = v k + k^2 / 2m."""
    return params.v * k + k * k / (2.0 * params.m_eff)


def epsilon_lower(k: float, params: LuttingerParams) -> float:
    """eps2(k) = v k - k^2 / 2m."""
    return params.v * k - k * k / (2.0 * params.m_eff)


def threshold_energy(channel: ChannelSpec, k: float, params: LuttingerParams) -> float:
    """Edge position of the channel's singularity at momentum k.

    Valid as a low-energy statement for 0 < k much smaller than the Fermi
    momentum; the function itself accepts any k >= 0.  Negative-frequency
    channels are parameterized by |omega|, so the returned value is the
    |omega| of their edge.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    exps = exponents_for_channel(channel, params.xi)
    if exps.branch is Branch.UPPER:
        return epsilon_upper(k, params)
    return epsilon_lower(k, params)


def all_channels() -> list[ChannelSpec]:
    """One ChannelSpec per kind, in enum order, with derived omega signs."""
    return [ChannelSpec(kind) for kind in ChannelKind]
