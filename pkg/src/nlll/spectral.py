"""Spectral density near thresholds: finite-size sums and continuum closed forms.

The finite-size route sums the squared formfactors of the eigenstates with
one high-energy quasiparticle plus low-energy particle-hole clouds at both
Fermi points.  After the high-energy position is summed out, every term is
a delta function at

    domega = -C1*q1 + C2*q2   (particle edges, support on both sides)
    domega = +C1*q1 + C2*q2   (hole edges, support above the edge only)

with q_{1,2} = (2pi/L) * integer and weights built from the closed
momentum-m sum rule F(m, delta^2) and the smooth factor f(kbar).  Binning
those deltas in domega estimates the spectral density; its log-log slope
and side-amplitude ratio reproduce the continuum closed forms evaluated by
:func:`continuum_particle` / :func:`continuum_hole`.

Normalization: the spectral density is A(omega, k) = sign(omega) Im G / pi,
i.e. the Fourier transform of the correlator divided by 2*pi.  The
per-delta weight used here is therefore

    L^(1-alpha) * f(kbar)^2 * F(q1bar, delta1^2) * F(q2bar, delta2^2) * ff_norm

which makes the histogram and the continuum formulas agree in absolute
scale, not only in exponent.  All outputs are exact up to the single
multiplicative normalization ff_norm = L^alpha |<1|psi+|0>|^2 (equivalently
the asymptotics prefactor c0); density channels near 2 p_F carry one extra
factor of 2*pi relative to the fermion case.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc, gammaln

from .channels import (
    Branch,
    ChannelKind,
    ChannelSpec,
    DegenerateChannelError,
    ExponentSet,
    LuttingerParams,
    exponents_for_channel,
    threshold_energy,
)
from .formfactors import loggamma_signed, smooth_factor_f

TWO_PI = 2.0 * math.pi
_CHUNK_ROWS = 512  # fixed partition of the q1 grid; part of the determinism contract

_DENSITY_KINDS = frozenset({ChannelKind.DENSITY_2PF_PARTICLE, ChannelKind.DENSITY_2PF_HOLE})


class ThresholdNotIntegrableError(DegenerateChannelError):
    """The closed-form edge exponent mu is <= 0; no integrable singularity."""


class FitWindowError(ValueError):
    """Not enough populated bins to fit a power law."""


def prefactor_from_c0(c0: float, alpha: float) -> float:
    """ff_norm = L^alpha |<1|psi+|0>|^2 from the asymptotics prefactor.

    The leading equal-time decay prefactor satisfies
    2 (L/2)^alpha |<1|psi+|0>|^2 = c0, hence ff_norm = c0 * 2^(alpha-1).
    """
    if not (c0 > 0 and math.isfinite(c0)):
        raise ValueError("c0 must be positive and finite")
    return c0 * 2.0 ** (alpha - 1.0)


def c0_from_prefactor(ff_norm: float, alpha: float) -> float:
    """Inverse of :func:`prefactor_from_c0`."""
    if not (ff_norm > 0 and math.isfinite(ff_norm)):
        raise ValueError("ff_norm must be positive and finite")
    return ff_norm * 2.0 ** (1.0 - alpha)


def resolve_ff_norm(params: LuttingerParams, alpha: float) -> float:
    """Normalization actually entering the sums, honoring the c0/ff_norm choice."""
    if params.ff_norm is not None:
        return params.ff_norm
    return prefactor_from_c0(params.c0 if params.c0 is not None else 1.0, alpha)


def channel_normalization(channel: ChannelSpec) -> float:
    """Extra multiplicative convention factor: 2*pi on the 2p_F density channels."""
    return TWO_PI if channel.effective_kind in _DENSITY_KINDS else 1.0


def drift_velocity(channel: ChannelSpec, k: float, params: LuttingerParams) -> float:
    """v_d of the high-energy excitation: v + k/m (particle), v - k/m (hole)."""
    exps = exponents_for_channel(channel, params.xi)
    if exps.hole:
        return params.v - k / params.m_eff
    return params.v + k / params.m_eff


def _require_nondegenerate(exps: ExponentSet) -> None:
    reason = exps.degenerate_reason()
    if reason is not None:
        raise DegenerateChannelError(
            f"degenerate channel: {reason}; probe with xi = 1 +/- 1e-6 style offsets"
        )


@dataclass(frozen=True)
class SpectralPoint:
    """One (omega, k) sample: domega = omega - edge, a_value = spectral density."""

    omega: float
    k: float
    domega: float
    a_value: float


@dataclass(frozen=True)
class BinSpec:
    """Two-sided logarithmic binning of |domega|.

    Bins cover [domega_min, domega_max] on each side of the threshold with
    `bins_per_decade` logarithmic bins per decade, plus one central bin
    (-domega_min, +domega_min) that collects the exact-threshold deltas.
    The default of 16 bins per decade keeps several grid lines in every bin
    of the usable fit windows at qmax ~ 2000; finer binning resolves the
    individual deltas and turns the density estimate into a comb.
    """

    domega_min: float
    domega_max: float
    bins_per_decade: int = 16

    def __post_init__(self) -> None:
        if not (0 < self.domega_min < self.domega_max):
            raise ValueError("need 0 < domega_min < domega_max")
        if self.bins_per_decade < 1:
            raise ValueError("bins_per_decade must be >= 1")

    def edges(self) -> np.ndarray:
        n = max(1, math.ceil(self.bins_per_decade * math.log10(self.domega_max / self.domega_min)))
        pos = np.geomspace(self.domega_min, self.domega_max, n + 1)
        return np.concatenate([-pos[::-1], pos])


@dataclass(frozen=True)
class Histogram:
    """Binned estimate of the spectral density on the finite-L delta comb.

    ``weights`` are densities: accumulated per-delta weight in each bin
    divided by the bin width.  ``counts`` is the number of grid deltas per
    bin.  ``reach_neg``/``reach_pos`` give the largest |domega| the q-grid
    can populate on each side (0 on the empty side of one-sided channels).

    ``fit_lo_*``/``fit_hi_*`` are the recommended power-law fit windows,
    computed at construction time: the lower ends keep a dozen grid cells
    of the coarse momentum direction below every bin, the upper ends keep
    the qmax-truncation loss of the slowly convergent cloud sums below the
    few-percent level (that loss equals the regularized incomplete beta
    I_f(mu, delta^2) of the window fraction f, so a plain 10%-off-the-edge
    rule is not enough on the weakly singular side).
    """

    bin_edges: np.ndarray
    weights: np.ndarray
    counts: np.ndarray
    reach_neg: float
    reach_pos: float
    fit_lo_neg: float = 0.0
    fit_hi_neg: float = 0.0
    fit_lo_pos: float = 0.0
    fit_hi_pos: float = 0.0

    def __post_init__(self) -> None:
        edges = np.asarray(self.bin_edges, dtype=float)
        if edges.ndim != 1 or edges.size < 2 or not np.all(np.diff(edges) > 0):
            raise ValueError("bin_edges must be strictly ascending")
        if self.weights.shape != (edges.size - 1,) or self.counts.shape != self.weights.shape:
            raise ValueError("weights/counts must have one entry per bin")
        if not np.all(np.isfinite(self.weights)) or np.any(self.weights < 0):
            raise ValueError("weights must be finite and nonnegative")

    @property
    def n_side(self) -> int:
        return (self.bin_edges.size - 2) // 2

    @property
    def threshold_index(self) -> int:
        """Index of the central bin straddling domega = 0."""
        return int(np.searchsorted(self.bin_edges, 0.0) - 1)

    @property
    def threshold_weight(self) -> float:
        """Raw (un-normalized by width) weight collected at the exact threshold."""
        i = self.threshold_index
        return float(self.weights[i] * (self.bin_edges[i + 1] - self.bin_edges[i]))

    @property
    def threshold_count(self) -> int:
        return int(self.counts[self.threshold_index])

    def side(self, sign: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(|domega| geometric centers, density, counts) on one side,
        ordered by increasing |domega|."""
        i0 = self.threshold_index
        if sign > 0:
            lo, hi = self.bin_edges[i0 + 1 :][:-1], self.bin_edges[i0 + 2 :]
            return np.sqrt(lo * hi), self.weights[i0 + 1 :], self.counts[i0 + 1 :]
        lo, hi = -self.bin_edges[1 : i0 + 1], -self.bin_edges[:i0]
        return np.sqrt(lo * hi)[::-1], self.weights[:i0][::-1], self.counts[:i0][::-1]

    def negative_weight(self) -> float:
        """Total raw weight strictly below the threshold."""
        i0 = self.threshold_index
        widths = np.diff(self.bin_edges[: i0 + 1])
        return float(np.sum(self.weights[:i0] * widths))


def _kinematics(
    channel: ChannelSpec, k: float, params: LuttingerParams, vd: float | None
) -> tuple[ExponentSet, float, float, float]:
    """(exponents, v_d, C1, C2) with validated positivity."""
    exps = exponents_for_channel(channel, params.xi)
    if vd is None:
        vd = params.v - k / params.m_eff if exps.hole else params.v + k / params.m_eff
    c1 = abs(vd - params.v)
    c2 = vd + params.v
    if c1 <= 0:
        raise ValueError("drift velocity must differ from the sound velocity (k > 0)")
    if c2 <= 0:
        raise ValueError(f"v_d + v must stay positive; got {c2:g} (k beyond the band regime)")
    return exps, vd, c1, c2


def default_bins(
    channel: ChannelSpec,
    k: float,
    params: LuttingerParams,
    qmax: int,
    bins_per_decade: int = 16,
    vd: float | None = None,
) -> BinSpec:
    """Binning that spans the full reachable |domega| range of the q-grid."""
    exps, _, c1, c2 = _kinematics(channel, k, params, vd)
    h = TWO_PI / params.L
    reach = ((c1 + c2) if exps.hole else max(c1, c2)) * h * qmax
    return BinSpec(0.45 * h * min(c1, c2), 1.02 * reach, bins_per_decade)


def finite_L_sum(
    channel: ChannelSpec,
    k: float,
    params: LuttingerParams,
    qmax: int,
    bins: BinSpec | None = None,
    vd: float | None = None,
    threads: int | None = None,
) -> Histogram:
    """Histogram the finite-size formfactor sum of one channel at momentum k.

    Sums the integer grid (q1bar, q2bar) in [0, qmax]^2; the (0, 0) term is
    the discrete threshold peak and lands, once, in the central bin.  The
    result estimates A(omega, k) around the edge in the same normalization
    as the continuum closed forms (see the module docstring).

    The q1 grid is processed in fixed-size chunks merged in index order, so
    results are bitwise reproducible at any thread count (``threads``
    defaults to the NLLL_THREADS environment variable, serial if unset).
    """
    if not (k > 0 and math.isfinite(k)):
        raise ValueError("k must be positive and finite")
    if qmax < 10:
        raise ValueError("qmax must be >= 10")
    exps, vd, c1, c2 = _kinematics(channel, k, params, vd)
    _require_nondegenerate(exps)

    h = TWO_PI / params.L
    kbar = k / h
    sgn1 = +1.0 if exps.hole else -1.0
    reach_neg = 0.0 if exps.hole else c1 * h * qmax
    reach_pos = (c1 + c2) * h * qmax if exps.hole else c2 * h * qmax

    if bins is None:
        bins = default_bins(channel, k, params, qmax, vd=vd)
    else:
        # 5% grace so ranges padded just past the outermost line stay legal
        reach_max = max(reach_neg, reach_pos)
        if bins.domega_max > 1.05 * reach_max:
            raise ValueError(
                f"qmax={qmax} too small to populate |domega| up to {bins.domega_max:g}; "
                f"reachable range is [-{reach_neg:g}, {reach_pos:g}]"
            )
    edges = bins.edges()

    fval = smooth_factor_f(kbar, exps.a_signed)
    ffn = resolve_ff_norm(params, exps.alpha)
    scalar = (
        math.exp((1.0 - exps.alpha) * math.log(params.L))
        * fval * fval * ffn * channel_normalization(channel)
    )

    qbar = np.arange(qmax + 1, dtype=float)
    log_f1 = gammaln(qbar + exps.beta1) - gammaln(qbar + 1.0) - gammaln(exps.beta1)
    log_f2 = gammaln(qbar + exps.beta2) - gammaln(qbar + 1.0) - gammaln(exps.beta2)
    f1 = np.exp(log_f1)
    f2 = np.exp(log_f2)
    dw2 = c2 * h * qbar

    def one_chunk(start: int) -> tuple[np.ndarray, np.ndarray]:
        stop = min(start + _CHUNK_ROWS, qmax + 1)
        dw = sgn1 * c1 * h * qbar[start:stop, None] + dw2[None, :]
        w = scalar * f1[start:stop, None] * f2[None, :]
        acc, _ = np.histogram(dw.ravel(), bins=edges, weights=w.ravel())
        cnt, _ = np.histogram(dw.ravel(), bins=edges)
        return acc, cnt

    starts = range(0, qmax + 1, _CHUNK_ROWS)
    if threads is None:
        threads = int(os.environ.get("NLLL_THREADS", "1") or "1")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_chunk, starts))
    else:
        results = [one_chunk(s) for s in starts]

    total = np.zeros(edges.size - 1)
    counts = np.zeros(edges.size - 1, dtype=np.int64)
    for acc, cnt in results:  # fixed merge order
        total += acc
        counts += cnt

    density = total / np.diff(edges)

    def truncation_cap(beta_marginal: float) -> float:
        # largest window fraction keeping the qmax-truncation loss <= 3%
        if exps.mu <= 0 or betainc(exps.mu, beta_marginal, 0.9) <= 0.03:
            return 0.9
        return brentq(lambda f: betainc(exps.mu, beta_marginal, f) - 0.03, 1e-12, 0.9)

    # bins must pool several comb lines of the coarse lattice; the required
    # standoff therefore scales with the relative bin width
    binw = 10.0 ** (1.0 / bins.bins_per_decade) - 1.0
    if exps.hole:
        coverage = 0.9 * min(c1, c2) * h * qmax  # all (q1, q2) pairs present below this
        fit_lo_pos = max(3.9 / binw, 10.0) * max(c1, c2) * h
        fit_hi_pos = coverage
        fit_lo_neg = fit_hi_neg = 0.0
    else:
        # above the edge the comb is dominated by isolated lines spaced c2*h
        # (the near-Fermi-point marginal concentrates at q=0); below the
        # edge the strong lines ride the dense c1*h lattice and a shorter
        # standoff suffices
        fit_lo_pos = max(3.5 / binw, 10.0) * c2 * h
        fit_lo_neg = max(2.3 / binw, 10.0) * c2 * h
        fit_hi_neg = truncation_cap(exps.beta2) * reach_neg
        fit_hi_pos = truncation_cap(exps.beta1) * reach_pos

    return Histogram(edges, density, counts, reach_neg=reach_neg, reach_pos=reach_pos,
                     fit_lo_neg=fit_lo_neg, fit_hi_neg=fit_hi_neg,
                     fit_lo_pos=fit_lo_pos, fit_hi_pos=fit_hi_pos)


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    log_amplitude: float  # log A extrapolated to |domega| = 1
    n_bins: int
    window: tuple[float, float]

    @property
    def decades(self) -> float:
        return math.log10(self.window[1] / self.window[0])


def power_fit(
    hist: Histogram,
    side: int,
    window: tuple[float, float] | None = None,
    drop_innermost: int = 0,
    min_bins: int = 6,
) -> PowerLawFit:
    """Weighted least-squares power-law fit of one histogram side.

    The window defaults to the histogram's recommended per-side fit range,
    whose lower end already discards the discreteness-dominated bins next
    to the threshold; ``drop_innermost`` can exclude additional populated
    bins at the inner end.  The populated bins inside the window are fit in
    log-log with the per-bin delta counts as weights.
    """
    absx, dens, cnts = hist.side(+1 if side > 0 else -1)
    if window is None:
        window = (hist.fit_lo_pos, hist.fit_hi_pos) if side > 0 else (
            hist.fit_lo_neg, hist.fit_hi_neg)
    keep = (cnts > 0) & (dens > 0) & (absx >= window[0]) & (absx <= window[1])
    idx = np.flatnonzero(keep)
    idx = idx[drop_innermost:]
    if idx.size < min_bins:
        raise FitWindowError(
            f"empty fitted window: only {idx.size} usable bins on side {side:+d} "
            f"in |domega| range [{window[0]:g}, {window[1]:g}]"
        )
    x = np.log(absx[idx])
    y = np.log(dens[idx])
    w = cnts[idx].astype(float)
    xm = np.average(x, weights=w)
    ym = np.average(y, weights=w)
    slope = np.average((x - xm) * (y - ym), weights=w) / np.average((x - xm) ** 2, weights=w)
    return PowerLawFit(
        slope=float(slope),
        log_amplitude=float(ym - slope * xm),
        n_bins=int(idx.size),
        window=(float(absx[idx[0]]), float(absx[idx[-1]])),
    )


def amplitude_ratio(hist: Histogram, min_bins: int = 4) -> float:
    """Ratio of integrated weight above vs below the edge over mirrored bins.

    Sums the raw weight of the bins whose |domega| lies in the overlap of
    the two sides' recommended fit windows.  Because both sides carry the
    same power law, the ratio of the integrals equals the side-amplitude
    ratio, and integrating first makes the estimate insensitive to how the
    individual comb lines fall into bins.  For particle edges this
    estimates sin(pi delta2^2) / sin(pi delta1^2).
    """
    i0 = hist.threshold_index
    lo = max(hist.fit_lo_neg, hist.fit_lo_pos)
    hi = min(hist.fit_hi_neg, hist.fit_hi_pos)
    w_pos = w_neg = 0.0
    n_pairs = 0
    for t in range(hist.n_side):
        jn, jp = i0 - 1 - t, i0 + 1 + t
        center = math.sqrt(hist.bin_edges[jp] * hist.bin_edges[jp + 1])
        if not (lo <= center <= hi):
            continue
        w_pos += hist.weights[jp] * (hist.bin_edges[jp + 1] - hist.bin_edges[jp])
        w_neg += hist.weights[jn] * (hist.bin_edges[jn + 1] - hist.bin_edges[jn])
        n_pairs += 1
    if n_pairs < min_bins or w_neg <= 0 or w_pos <= 0:
        raise FitWindowError(f"empty fitted window: only {n_pairs} mirrored bin pairs")
    return w_pos / w_neg


def _particle_exponents(channel: ChannelSpec, xi: float) -> ExponentSet:
    exps = exponents_for_channel(channel, xi)
    if exps.hole:
        raise ValueError("particle-type channel required")
    return exps


def continuum_particle(
    omega: float,
    k: float,
    params: LuttingerParams,
    channel: ChannelSpec,
    vd: float | None = None,
) -> SpectralPoint:
    """Closed-form spectral density near a particle edge.

    A(omega, k) = (2pi)^(1-alpha)/pi * k^(2a-2)/Gamma(a)^2
                  * Gamma(mu) * ff_norm / ((v_d-v)^d1^2 (v_d+v)^d2^2)
                  * [theta(dw) sin(pi d2^2) + theta(-dw) sin(pi d1^2)]
                  * |dw|^(-mu),    dw = omega - eps1(k), mu = 1 - d1^2 - d2^2.

    L enters only through ff_norm (the L-cancellation at work).  Requires
    mu > 0; channels with a vanishing edge (mu <= 0) have no integrable
    singularity of this form and are rejected.
    """
    if not (k > 0 and math.isfinite(k)):
        raise ValueError("k must be positive and finite")
    exps, vd, c1, c2 = _kinematics(channel, k, params, vd)
    if exps.hole:
        raise ValueError("particle-type channel required")
    _require_nondegenerate(exps)
    if exps.mu <= 0:
        raise ThresholdNotIntegrableError(
            f"mu = {exps.mu:g} <= 0: the edge vanishes instead of diverging and the "
            "two-sided closed form does not apply to this channel"
        )
    dw = omega - threshold_energy(channel, k, params)
    if dw == 0.0:
        raise ValueError("spectral density is not defined exactly at the threshold")
    b1, b2 = exps.beta1, exps.beta2
    side = math.sin(math.pi * b2) if dw > 0 else math.sin(math.pi * b1)
    lg_a, _ = loggamma_signed(exps.a_signed)
    lg_mu, _ = loggamma_signed(exps.mu)
    log_a_val = (
        math.log(channel_normalization(channel))
        + (1.0 - exps.alpha) * math.log(TWO_PI)
        - math.log(math.pi)
        + (2.0 * exps.a_signed - 2.0) * math.log(k)
        - 2.0 * lg_a
        + lg_mu
        + math.log(resolve_ff_norm(params, exps.alpha))
        - b1 * math.log(c1)
        - b2 * math.log(c2)
        + math.log(side)
        - exps.mu * math.log(abs(dw))
    )
    return SpectralPoint(omega=omega, k=k, domega=dw, a_value=math.exp(log_a_val))


def continuum_hole(
    omega: float,
    k: float,
    params: LuttingerParams,
    channel: ChannelSpec,
    vd: float | None = None,
) -> SpectralPoint:
    """Closed-form spectral density near a hole edge (one-sided support).

    A(omega, k) = (2pi)^(1-alpha) * k^(-2-2a)/Gamma(-a)^2
                  * ff_norm / (Gamma(d1~^2+d2~^2) (v-v_d)^d1~^2 (v+v_d)^d2~^2)
                  * theta(dw) * dw^(d1~^2+d2~^2-1),    dw = omega - eps2(k).

    Zero at and below the edge.  The exponent 1 - d1~^2 - d2~^2 may be
    negative (edge vanishing like a positive power), which is permitted.
    """
    if not (k > 0 and math.isfinite(k)):
        raise ValueError("k must be positive and finite")
    exps, vd, c1, c2 = _kinematics(channel, k, params, vd)
    if not exps.hole:
        raise ValueError("hole-type channel required")
    _require_nondegenerate(exps)
    dw = omega - threshold_energy(channel, k, params)
    if dw <= 0.0:
        return SpectralPoint(omega=omega, k=k, domega=dw, a_value=0.0)
    b1, b2 = exps.beta1, exps.beta2
    lg_a, _ = loggamma_signed(exps.a_signed)  # Gamma(-a)
    lg_bsum, _ = loggamma_signed(b1 + b2)
    log_a_val = (
        math.log(channel_normalization(channel))
        + (1.0 - exps.alpha) * math.log(TWO_PI)
        + (2.0 * exps.a_signed - 2.0) * math.log(k)
        - 2.0 * lg_a
        + math.log(resolve_ff_norm(params, exps.alpha))
        - lg_bsum
        - b1 * math.log(c1)
        - b2 * math.log(c2)
        - (1.0 - b1 - b2) * math.log(dw)
    )
    return SpectralPoint(omega=omega, k=k, domega=dw, a_value=math.exp(log_a_val))


def kdep_formfactor(k: float, params: LuttingerParams, exps: ExponentSet) -> float:
    """|<k|psi+|0>|^2 from the unit-momentum formfactor normalization.

    |<k|psi+|0>|^2 = k^(2a-2) (2pi/L)^(2-2a) Gamma(a)^(-2) |<1|psi+|0>|^2
    with |<1|psi+|0>|^2 = ff_norm / L^alpha.  Uses the channel's signed
    smooth-factor exponent, reducing to the stated relation on particle
    branches.
    """
    if not (k > 0 and math.isfinite(k)):
        raise ValueError("k must be positive and finite")
    a = exps.a_signed
    lg_a, _ = loggamma_signed(a)
    ffn = resolve_ff_norm(params, exps.alpha)
    return math.exp(
        (2.0 * a - 2.0) * math.log(k)
        + (2.0 - 2.0 * a) * math.log(TWO_PI / params.L)
        - 2.0 * lg_a
        + math.log(ffn)
        - exps.alpha * math.log(params.L)
    )


def continuum_particle_via_kdep(
    omega: float,
    k: float,
    params: LuttingerParams,
    channel: ChannelSpec,
    vd: float | None = None,
) -> SpectralPoint:
    """Particle closed form re-expressed through the k-dependent formfactor.

    Substituting |<k|psi+|0>|^2 absorbs every explicit k power and the
    Gamma(a) factors of the prefactor:

    A = L/pi * Gamma(mu) * |<k|psi+|0>|^2
        * [theta/sin combination] / ((2pi C1/L)^b1 (2pi C2/L)^b2 |dw|^mu).

    Algebraically identical to :func:`continuum_particle`; kept as the
    cross-check that the k-dependence is carried by the formfactor alone.
    """
    exps, vd, c1, c2 = _kinematics(channel, k, params, vd)
    if exps.hole:
        raise ValueError("particle-type channel required")
    _require_nondegenerate(exps)
    if exps.mu <= 0:
        raise ThresholdNotIntegrableError(f"mu = {exps.mu:g} <= 0")
    dw = omega - threshold_energy(channel, k, params)
    if dw == 0.0:
        raise ValueError("spectral density is not defined exactly at the threshold")
    b1, b2 = exps.beta1, exps.beta2
    side = math.sin(math.pi * b2) if dw > 0 else math.sin(math.pi * b1)
    lg_mu, _ = loggamma_signed(exps.mu)
    log_a_val = (
        math.log(channel_normalization(channel))
        + math.log(params.L / math.pi)
        + lg_mu
        + math.log(kdep_formfactor(k, params, exps))
        + math.log(side)
        - b1 * math.log(TWO_PI * c1 / params.L)
        - b2 * math.log(TWO_PI * c2 / params.L)
        - exps.mu * math.log(abs(dw))
    )
    return SpectralPoint(omega=omega, k=k, domega=dw, a_value=math.exp(log_a_val))


def dsf_step(omega: float, k: float, params: LuttingerParams) -> float:
    """Small-k density structure factor: m/(k xi) inside [eps2, eps1], else 0.

    Band edges included.  The frequency integral is exactly
    (m/(k xi)) * (eps1 - eps2) = k/xi.
    """
    if not (k > 0 and math.isfinite(k)):
        raise ValueError("k must be positive and finite")
    from .channels import epsilon_lower, epsilon_upper

    if epsilon_lower(k, params) <= omega <= epsilon_upper(k, params):
        return params.m_eff / (k * params.xi)
    return 0.0
