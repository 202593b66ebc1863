"""
fitting
=======

Recover Mollow peak positions from sampled spectra.

The model is the three-Lorentzian form of the secular spectrum,

    S(ω) = s · Σᵢ aᵢ / ((ω − cᵢ)² + wᵢ²),

with per-peak centre cᵢ, half-width wᵢ and weight aᵢ = Γᵢ·Aᵢ.  The
overall scale s = Γ/π is taken from the spectrum metadata and held fixed
unless ``FitOptions.fix_scale`` is cleared; fixing it removes the
degeneracy between s and the weights.

Minimisation is a Levenberg–Marquardt loop (λ₀ = 1e-3, ×10 on a rejected
step, ÷10 on an accepted one, Marquardt diagonal scaling).  Widths,
weights and a free scale are optimised through their logarithms so every
iterate is a valid line shape.  Internally the data are rescaled to unit
height and the frequency axis to [−1, 1]; results are mapped back before
they are returned.  The fit is deterministic for fixed input.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DegenerateInit, DidNotConverge, NoPeaks, ValidationError
from .spectrum import (
    CorrectionMode,
    GridSpec,
    SpectrumSamples,
    effective_rabi,
    spectrum_pair,
)

logger = logging.getLogger(__name__)

LAMBDA_START = 1e-3
LAMBDA_UP = 10.0
LAMBDA_DOWN = 10.0
LAMBDA_MAX = 1e16

MIN_FIT_SAMPLES = 30
MIN_PEAK_SAMPLES = 5

#: Seed half-width in units of the metadata decay rate.
SEED_WIDTH = 0.6


@dataclass(frozen=True)
class LorentzianPeak:
    center: float
    half_width: float
    weight: float

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise ValidationError(f"half-width must be positive, got {self.half_width!r}")
        if not self.weight > 0:
            raise ValidationError(f"weight must be positive, got {self.weight!r}")


@dataclass(frozen=True)
class FitOptions:
    max_iter: int = 200
    tol: float = 1e-12
    fix_scale: bool = True
    raise_on_failure: bool = False


@dataclass
class ThreeLorentzianFit:
    peaks: Tuple[LorentzianPeak, LorentzianPeak, LorentzianPeak]
    overall_scale: float
    residual_rms: float = 0.0
    iterations: int = 0
    converged: bool = False
    covariance: np.ndarray = field(default_factory=lambda: np.zeros((9, 9)))

    def __post_init__(self) -> None:
        if len(self.peaks) != 3:
            raise ValidationError(f"expected exactly three peaks, got {len(self.peaks)}")
        self.peaks = tuple(sorted(self.peaks, key=lambda p: p.center))  # type: ignore[assignment]

    @property
    def lower(self) -> LorentzianPeak:
        return self.peaks[0]

    @property
    def central(self) -> LorentzianPeak:
        return self.peaks[1]

    @property
    def upper(self) -> LorentzianPeak:
        return self.peaks[2]

    def theta(self) -> np.ndarray:
        """Flat natural parameter vector (c, w, a) × 3."""
        return np.array([v for p in self.peaks for v in (p.center, p.half_width, p.weight)])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "peaks": [asdict(p) for p in self.peaks],
            "overall_scale": self.overall_scale,
            "residual_rms": self.residual_rms,
            "iterations": self.iterations,
            "converged": self.converged,
            "covariance": self.covariance.tolist(),
        }


# ---------------------------------------------------------------------------
# Model


def lorentzian_model(omega, theta: Sequence[float], scale: float = 1.0) -> np.ndarray:
    """s · Σ aᵢ/((ω−cᵢ)² + wᵢ²) for ``theta`` = (c, w, a) × 3."""
    x = np.asarray(omega, dtype=float)
    out = np.zeros_like(x)
    for c, w, a in np.reshape(np.asarray(theta, dtype=float), (-1, 3)):
        out += a / ((x - c) ** 2 + w * w)
    return scale * out


def model_jacobian(omega, theta: Sequence[float], scale: float = 1.0, with_scale: bool = False) -> np.ndarray:
    """Analytic ∂S/∂(c, w, a) per peak, plus ∂S/∂s as a last column when ``with_scale``."""
    x = np.asarray(omega, dtype=float)
    params = np.reshape(np.asarray(theta, dtype=float), (-1, 3))
    cols = []
    for c, w, a in params:
        u = x - c
        d = u * u + w * w
        d2 = d * d
        cols.append(scale * a * 2.0 * u / d2)
        cols.append(-scale * a * 2.0 * w / d2)
        cols.append(scale / d)
    if with_scale:
        cols.append(lorentzian_model(x, theta, 1.0))
    return np.column_stack(cols)


# ---------------------------------------------------------------------------
# Peak finding


def find_peaks(samples: SpectrumSamples) -> List[Tuple[float, float]]:
    """Strict local maxima as (centre, height), tallest first.

    Each maximum is refined by a parabola through the logarithms of the
    three samples around it (plain values when any of them is not positive).
    """
    x, y = samples.omega_grid, samples.values
    if x.size < MIN_PEAK_SAMPLES:
        raise ValidationError(f"peak search needs at least {MIN_PEAK_SAMPLES} samples, got {x.size}")
    idx = np.nonzero((y[1:-1] > y[:-2]) & (y[1:-1] > y[2:]))[0] + 1
    if idx.size == 0:
        raise NoPeaks("spectrum has no interior local maximum")
    peaks = []
    for i in idx:
        ym, y0, yp = y[i - 1], y[i], y[i + 1]
        use_log = ym > 0 and y0 > 0 and yp > 0
        if use_log:
            ym, y0, yp = math.log(ym), math.log(y0), math.log(yp)
        curvature = ym - 2.0 * y0 + yp
        delta = 0.5 * (ym - yp) / curvature if curvature != 0 else 0.0
        top = y0 - 0.25 * (ym - yp) * delta
        step = x[i + 1] - x[i] if delta >= 0 else x[i] - x[i - 1]
        peaks.append((float(x[i] + delta * step), float(math.exp(top) if use_log else top)))
    peaks.sort(key=lambda p: p[1], reverse=True)
    return peaks


def _metadata_gamma(samples: SpectrumSamples) -> Optional[float]:
    params = samples.metadata.get("parameters") if samples.metadata else None
    gamma = params.get("Gamma") if isinstance(params, dict) else None
    if isinstance(gamma, (int, float)) and not isinstance(gamma, bool) and gamma > 0:
        return float(gamma)
    return None


def _half_width_estimate(samples: SpectrumSamples, center: float, height: float) -> float:
    """Distance from ``center`` to the first half-maximum crossing."""
    x, y = samples.omega_grid, samples.values
    i = int(np.clip(np.searchsorted(x, center), 1, x.size - 2))
    j = i
    while j < x.size - 1 and y[j] > 0.5 * height:
        j += 1
    k = i
    while k > 0 and y[k] > 0.5 * height:
        k -= 1
    return max(0.5 * (x[j] - x[k]), samples.step)


def seed_fit(samples: SpectrumSamples, scale: float) -> ThreeLorentzianFit:
    """Initial three-peak guess from :func:`find_peaks`."""
    candidates = find_peaks(samples)
    gamma = _metadata_gamma(samples)
    tallest_c, tallest_h = candidates[0]
    width = SEED_WIDTH * gamma if gamma else _half_width_estimate(samples, tallest_c, tallest_h)
    separation = max(4.0 * width, 5.0 * samples.step)
    chosen: List[Tuple[float, float]] = []
    for c, h in candidates:
        if all(abs(c - other) > separation for other, _ in chosen):
            chosen.append((c, h))
        if len(chosen) == 3:
            break
    if len(chosen) < 3:
        raise DegenerateInit(f"found {len(chosen)} separated peaks, need 3")
    peaks = tuple(LorentzianPeak(c, width, max(h, 1e-300) * width / scale) for c, h in chosen)
    return ThreeLorentzianFit(peaks=peaks, overall_scale=scale)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Levenberg–Marquardt


def _check_distinct(centers: Sequence[float], span: float) -> None:
    ordered = sorted(centers)
    for a, b in zip(ordered, ordered[1:]):
        if b - a <= 1e-12 * span:
            raise DegenerateInit(f"initial peaks coincide at {a!r}")


def fit_three_lorentzians(
    samples: SpectrumSamples,
    init: Optional[ThreeLorentzianFit] = None,
    options: Optional[FitOptions] = None,
) -> ThreeLorentzianFit:
    """Least-squares fit of three Lorentzians to ``samples``.

    Non-convergence returns the best fit with ``converged=False`` (or
    raises :class:`DidNotConverge` when ``options.raise_on_failure``).
    """
    opts = options or FitOptions()
    x, y = samples.omega_grid, samples.values
    if x.size < MIN_FIT_SAMPLES:
        raise ValidationError(f"fit needs at least {MIN_FIT_SAMPLES} samples, got {x.size}")

    gamma = _metadata_gamma(samples)
    scale0 = init.overall_scale if init is not None else (gamma / math.pi if gamma else 1.0)
    if init is None:
        init = seed_fit(samples, scale0)
    x_mid = 0.5 * (x[0] + x[-1])
    x_span = 0.5 * (x[-1] - x[0])
    _check_distinct([p.center for p in init.peaks], 2.0 * x_span)

    y_max = float(np.max(np.abs(y))) or 1.0
    X = (x - x_mid) / x_span
    Y = y / y_max
    # Normalised model: Σ Aᵢ/((X−Cᵢ)² + Wᵢ²) · σ, with A = a·s/(y_max·x_span²).
    unit = scale0 / (y_max * x_span**2)
    q = []
    for p in init.peaks:
        q += [(p.center - x_mid) / x_span, math.log(p.half_width / x_span), math.log(p.weight * unit)]
    if not opts.fix_scale:
        q.append(0.0)
    q = np.array(q)
    n_par = q.size

    def unpack(v: np.ndarray) -> Tuple[np.ndarray, float]:
        th = np.array(v[:9], copy=True)
        th[1::3] = np.exp(th[1::3])
        th[2::3] = np.exp(th[2::3])
        sigma = math.exp(v[9]) if not opts.fix_scale else 1.0
        return th, sigma

    def residual(v: np.ndarray) -> np.ndarray:
        th, sigma = unpack(v)
        return lorentzian_model(X, th, sigma) - Y

    def jacobian(v: np.ndarray) -> np.ndarray:
        th, sigma = unpack(v)
        J = model_jacobian(X, th, sigma, with_scale=not opts.fix_scale)
        J[:, 1:9:3] *= th[1::3]
        J[:, 2:9:3] *= th[2::3]
        if not opts.fix_scale:
            J[:, 9] *= sigma
        return J

    r = residual(q)
    cost = 0.5 * float(r @ r)
    lam = LAMBDA_START
    converged = False
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        J = jacobian(q)
        g = J.T @ r
        if float(np.max(np.abs(g))) < opts.tol:
            converged = True
            break
        H = J.T @ J
        H_diag = np.diag(np.diag(H))
        accepted = False
        while lam <= LAMBDA_MAX:
            try:
                step = np.linalg.solve(H + lam * H_diag, -g)
            except np.linalg.LinAlgError:
                lam *= LAMBDA_UP
                continue
            q_new = q + step
            r_new = residual(q_new)
            cost_new = 0.5 * float(r_new @ r_new)
            if math.isfinite(cost_new) and cost_new < cost:
                accepted = True
                break
            lam *= LAMBDA_UP
        if not accepted:
            # No damped step lowers the cost any more: relative decrease is zero.
            logger.debug("LM stalled at iteration %d (cost=%.3e)", iterations, cost)
            converged = True
            break
        decrease = (cost - cost_new) / cost
        q, r, cost = q_new, r_new, cost_new
        lam /= LAMBDA_DOWN
        logger.debug("LM iteration %d: cost=%.6e lambda=%.1e", iterations, cost, lam)
        if cost == 0.0 or (iterations > 1 and decrease < opts.tol):
            converged = True
            break

    th, sigma = unpack(q)
    J = jacobian(q)
    dof = max(x.size - n_par, 1)
    cov_q = (2.0 * cost / dof) * np.linalg.pinv(J.T @ J)
    back = np.empty(n_par)
    back[0:9:3] = x_span
    back[1:9:3] = th[1::3] * x_span
    weights = th[2::3] / unit
    back[2:9:3] = weights
    if not opts.fix_scale:
        back[9] = sigma * scale0
    cov = back[:, None] * cov_q * back[None, :]
    cov = 0.5 * (cov + cov.T)

    peaks = tuple(
        LorentzianPeak(center=x_mid + th[3 * i] * x_span, half_width=th[3 * i + 1] * x_span, weight=weights[i])
        for i in range(3)
    )
    if not opts.fix_scale:
        # Fold the scale factor into the reported scale, keep weights in the seed's scale.
        scale_out = scale0 * sigma
    else:
        scale_out = scale0
    fit = ThreeLorentzianFit(
        peaks=peaks,  # type: ignore[arg-type]
        overall_scale=scale_out,
        residual_rms=y_max * math.sqrt(2.0 * cost / x.size),
        iterations=iterations,
        converged=converged,
        covariance=cov,
    )
    if not converged:
        logger.warning("Lorentzian fit did not converge in %d iterations", opts.max_iter)
        if opts.raise_on_failure:
            raise DidNotConverge(f"no convergence after {opts.max_iter} iterations", fit=fit)
    return fit


# ---------------------------------------------------------------------------
# Measurement emulation


def add_noise(samples: SpectrumSamples, sigma_rel: float, rng: np.random.Generator) -> SpectrumSamples:
    """Additive white Gaussian noise of standard deviation ``sigma_rel · max(S)``."""
    sigma = sigma_rel * float(np.max(samples.values))
    noisy = samples.values + rng.normal(0.0, sigma, size=samples.values.shape)
    meta = dict(samples.metadata)
    meta["noise_sigma"] = sigma
    return SpectrumSamples(samples.omega_grid.copy(), noisy, meta)


@dataclass
class SidebandShiftMeasurement:
    reference: CorrectionMode
    delta_plus_measured: float
    delta_minus_measured: float
    r1_measured: float
    delta_plus_expected: float
    sideband_width_measured: float
    reference_fit: ThreeLorentzianFit
    corrected_fit: ThreeLorentzianFit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reference": self.reference.value,
            "delta_plus_measured": self.delta_plus_measured,
            "delta_minus_measured": self.delta_minus_measured,
            "r1_measured": self.r1_measured,
            "delta_plus_expected": self.delta_plus_expected,
            "sideband_width_measured": self.sideband_width_measured,
            "reference_fit": self.reference_fit.to_dict(),
            "corrected_fit": self.corrected_fit.to_dict(),
        }


def measure_sideband_shift(
    Omega: float,
    Delta: float,
    Gamma: float,
    C: float,
    L_bare: float,
    grid: Optional[GridSpec] = None,
    omega_L: float = 0.0,
    noise: Optional[Tuple[float, int]] = None,
    reference: CorrectionMode = CorrectionMode.NONE,
    options: Optional[FitOptions] = None,
    shift_weights_detuning: bool = False,
) -> SidebandShiftMeasurement:
    """Fit the reference and fully corrected spectra and difference the sideband centres.

    ``noise`` is ``(sigma_rel, seed)``.  With ``reference=BARE`` only the
    radiative Rabi correction 𝓒 is measured.
    """
    reference = CorrectionMode(reference)
    spectra = spectrum_pair(
        Omega,
        Delta,
        Gamma,
        C,
        L_bare,
        grid=grid,
        omega_L=omega_L,
        shift_weights_detuning=shift_weights_detuning,
        modes=(reference, CorrectionMode.FULL),
    )
    ref_samples, full_samples = spectra[reference], spectra[CorrectionMode.FULL]
    if noise is not None:
        sigma_rel, seed = noise
        rng = np.random.default_rng(seed)
        ref_samples = add_noise(ref_samples, sigma_rel, rng)
        full_samples = add_noise(full_samples, sigma_rel, rng)
    ref_fit = fit_three_lorentzians(ref_samples, options=options)
    full_fit = fit_three_lorentzians(full_samples, options=options)
    d_plus = full_fit.upper.center - ref_fit.upper.center
    d_minus = full_fit.lower.center - ref_fit.lower.center
    width = full_fit.upper.half_width
    expected = effective_rabi(CorrectionMode.FULL, Omega, Delta, C, L_bare) - effective_rabi(
        reference, Omega, Delta, C, L_bare
    )
    return SidebandShiftMeasurement(
        reference=reference,
        delta_plus_measured=d_plus,
        delta_minus_measured=d_minus,
        r1_measured=abs(d_plus) / width,
        delta_plus_expected=expected,
        sideband_width_measured=width,
        reference_fit=ref_fit,
        corrected_fit=full_fit,
    )


def fit_report(fit: ThreeLorentzianFit, samples: Optional[SpectrumSamples] = None) -> Dict[str, Any]:
    report = fit.to_dict()
    if samples is not None:
        report["n_samples"] = len(samples)
        report["source"] = {k: v for k, v in samples.metadata.items() if k != "grid"}
    return report


def residuals_csv(samples: SpectrumSamples, fit: ThreeLorentzianFit, path: Union[str, Path]) -> Path:
    """Write ``omega,S_inc,model,residual`` rows for a finished fit."""
    path = Path(path)
    model = lorentzian_model(samples.omega_grid, fit.theta(), fit.overall_scale)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["omega", "S_inc", "model", "residual"])
        for w, s, m in zip(samples.omega_grid, samples.values, model):
            writer.writerow([f"{w:.17g}", f"{s:.17g}", f"{m:.17g}", f"{s - m:.17g}"])
    return path
