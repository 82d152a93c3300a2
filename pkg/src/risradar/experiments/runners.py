"""Experiment runners: the closely spaced gain table, the widely spaced Pd
curves, the closed-form vs Monte Carlo suite and the scenario report."""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from ..detection import (
    DetectorConfig,
    DetectorKind,
    FluctuationLaw,
    combiner_weights,
    pd_closed_form,
    pd_dual_exponential,
    pd_dual_exponential_as_printed,
    pd_single,
    threshold_from_pfa,
)
from ..exceptions import UnsupportedError
from ..geometry import BeamConfig, DetectionCase, SpacingRegime, classify_delay_case
from ..montecarlo import Hypothesis, TrialConfig, estimate_rate, synthetic_signal
from ..snr import (
    FluctuationModel,
    optimal_split_closely,
    optimal_split_widely,
    snr_closely,
)
from .config import ScenarioConfig

TWO_TX = BeamConfig(tx_beams=2, rx_beams=1)
ONE_TX = BeamConfig(tx_beams=1, rx_beams=2)


def db_half_up(x: float) -> str:
    """10 log10(x) rounded half-up to two decimals, as text."""
    if not x > 0:
        return "-inf"
    return str(Decimal(repr(float(10.0 * np.log10(x)))).quantize(Decimal("0.01"), ROUND_HALF_UP))


def _num(x: float) -> str:
    return f"{float(x):.6g}"


def _prob(x: float) -> str:
    return f"{float(x):.6e}"


def write_csv(header, rows) -> str:
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


# -- closely spaced gain table ----------------------------------------------------


@dataclass(frozen=True)
class GainRow:
    ris_side: float
    ris_distance: float
    k_sr: float
    k_st: float
    gain_a: float
    gain_b: float | None
    gain_c: float | None
    regime: SpacingRegime
    far_field_ok: bool


CLOSELY_HEADER = ("ris_side", "ris_distance", "k_sr", "gain_case_a_db", "gain_case_b_db",
                  "gain_case_c_db", "far_field_ok")


def _supported(scenario, bandwidth: float, case: DetectionCase) -> bool:
    try:
        return classify_delay_case(scenario.geometry, scenario.derived, TWO_TX, bandwidth) is case
    except UnsupportedError:
        return False


def closely_rows(config: ScenarioConfig) -> list[GainRow]:
    rows = []
    for side in config.ris_sides:
        sc = config.scenario(side)
        K = sc.gains
        if not sc.far_field.all_ok:
            warnings.warn(f"far-field condition violated at RIS side {side} m", RuntimeWarning,
                          stacklevel=2)
        gain_a = sum(snr_closely(DetectionCase.A, 1.0, K).snr_values)
        gain_b = gain_c = None
        if _supported(sc, config.bandwidth_case_b, DetectionCase.B):
            eps = (optimal_split_closely(DetectionCase.B, K.K_st) if config.epsilon == "optimal"
                   else config.epsilon)
            gain_b = sum(snr_closely(DetectionCase.B, 1.0, K, eps).snr_values)
        if _supported(sc, config.bandwidth_case_c, DetectionCase.C):
            eps = (optimal_split_closely(DetectionCase.C, K.K_st) if config.epsilon == "optimal"
                   else config.epsilon)
            gain_c = sum(snr_closely(DetectionCase.C, 1.0, K, eps).snr_values)
        rows.append(GainRow(side, sc.derived.d_r, K.K_sr, K.K_st, gain_a, gain_b, gain_c,
                            sc.regime, sc.far_field.all_ok))
    return rows


def run_closely_table(config: ScenarioConfig) -> str:
    def fmt(g):
        return "" if g is None or g <= 0 else db_half_up(g)

    body = [(_num(r.ris_side), _num(r.ris_distance), _num(r.k_sr), fmt(r.gain_a), fmt(r.gain_b),
             fmt(r.gain_c), "1" if r.far_field_ok else "0") for r in closely_rows(config)]
    return write_csv(CLOSELY_HEADER, body)


# -- widely spaced Pd curves --------------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    ris_side: float
    k_sr: float
    k_st: float
    snr0_db: float
    pd_no_ris: float
    pd_case_a: float
    pd_case_b: float
    pd_case_c: float
    epsilon_b: float
    epsilon_c: float


WIDELY_HEADER = ("ris_side", "k_st", "snr0_db", "pd_no_ris", "pd_case_a", "pd_case_b",
                 "pd_case_c", "epsilon_b", "epsilon_c")


def widely_points(config: ScenarioConfig, k_override: tuple[float, float] | None = None,
                  ) -> list[CurvePoint]:
    """Closed-form Pd over the SNR_0 grid for every RIS side in ``config``.

    ``k_override`` replaces the scenario gains (K_sr, K_st) and evaluates a
    single synthetic curve; it is used to probe the curves at a prescribed K.
    """
    model = config.fluctuation_model()
    if model.law is not FluctuationLaw.EXPONENTIAL:
        raise UnsupportedError("widely spaced curves need the exponential fluctuation law")
    g1 = threshold_from_pfa(DetectorKind.SINGLE_ENERGY, config.pfa)
    g2 = threshold_from_pfa(DetectorKind.DUAL_ENERGY, config.pfa)
    r = model.sigma_s_bar / model.sigma_bar
    low = model.sigma_bounds[0] / model.sigma_bar

    if k_override is not None:
        sources = [(float("nan"), *k_override)]
    else:
        sources = []
        for side in config.ris_sides:
            K = config.scenario(side).gains
            sources.append((side, K.K_sr, K.K_st))

    points = []
    for side, k_sr, k_st in sources:
        for snr_db in config.snr0_grid_db():
            s0 = 10.0 ** (snr_db / 10.0)
            if config.epsilon == "optimal":
                eps_b = optimal_split_widely(DetectionCase.B, k_st, model, gamma=g2,
                                             snr0_min=s0 * low)
                eps_c = optimal_split_widely(DetectionCase.C, k_st, model)
            else:
                eps_b = eps_c = float(config.epsilon)
            pd_none = pd_single(FluctuationLaw.EXPONENTIAL, s0, g1)
            pd_a = pd_dual_exponential(s0, s0 * k_sr * r, g2)
            pd_b = pd_dual_exponential(eps_b * s0, (1.0 - eps_b) * s0 * k_st * r, g2)
            pd_c = pd_single(FluctuationLaw.EXPONENTIAL, s0 * (eps_c + (1.0 - eps_c) * k_st * r), g1)
            points.append(CurvePoint(side, k_sr, k_st, float(snr_db), float(pd_none), float(pd_a),
                                     float(pd_b), float(pd_c), eps_b, eps_c))
    return points


def run_widely_curves(config: ScenarioConfig) -> str:
    body = [(_num(p.ris_side), _num(p.k_st), f"{p.snr0_db:.2f}", _prob(p.pd_no_ris),
             _prob(p.pd_case_a), _prob(p.pd_case_b), _prob(p.pd_case_c), f"{p.epsilon_b:.6f}",
             f"{p.epsilon_c:.6f}") for p in widely_points(config)]
    return write_csv(WIDELY_HEADER, body)


# -- closed form vs Monte Carlo ---------------------------------------------------


@dataclass(frozen=True)
class ValidationCheck:
    """One closed-form vs Monte Carlo pair.

    ``expect_agreement`` is False for negative controls, which pass when the
    simulation disagrees with the (deliberately wrong) closed form.
    """

    name: str
    closed_form: float
    estimate: float
    stderr: float
    deviation: float
    expect_agreement: bool = True
    k: float = 3.0

    @property
    def agrees(self) -> bool:
        return abs(self.estimate - self.closed_form) <= self.k * self.stderr

    @property
    def passed(self) -> bool:
        return self.agrees == self.expect_agreement


VALIDATION_HEADER = ("name", "closed_form", "estimate", "stderr", "deviation", "expected",
                     "passed")


def _check(name, reference, rate, expect=True) -> ValidationCheck:
    return ValidationCheck(name, float(reference), rate.estimate, rate.stderr,
                           rate.deviation(reference), expect)


def validation_checks(config: ScenarioConfig) -> list[ValidationCheck]:
    """The closed-form vs Monte Carlo pairs, including the negative controls."""
    seed, n = config.seed, config.trials
    checks = []
    closely, widely = SpacingRegime.CLOSELY, SpacingRegime.WIDELY
    C, A, B = DetectionCase.C, DetectionCase.A, DetectionCase.B

    def rate(signal, case, det, law, hyp=Hypothesis.TARGET_PRESENT, eps=1.0, offset=0):
        fluct = FluctuationModel(law, 1.0)
        return estimate_rate(signal, case, det, fluct, TrialConfig(seed + offset, n, hyp), eps)

    # false alarm
    for i, pfa in enumerate((1e-2, 1e-3)):
        g = threshold_from_pfa(DetectorKind.SINGLE_ENERGY, pfa)
        det = DetectorConfig(DetectorKind.SINGLE_ENERGY, g)
        sig = synthetic_signal(1.0, 0.0, closely)
        r = rate(sig, C, det, FluctuationLaw.EXPONENTIAL, Hypothesis.TARGET_ABSENT, offset=10 + i)
        checks.append(_check(f"pfa_single_{pfa:g}", pfa, r))

        g2 = threshold_from_pfa(DetectorKind.DUAL_ENERGY, pfa)
        det2 = DetectorConfig(DetectorKind.DUAL_ENERGY, g2)
        sig2 = synthetic_signal(1.0, 1.0, widely)
        r = rate(sig2, A, det2, FluctuationLaw.EXPONENTIAL, Hypothesis.TARGET_ABSENT,
                 offset=20 + i)
        checks.append(_check(f"pfa_dual_{pfa:g}", pfa, r))

        gc = threshold_from_pfa(DetectorKind.COHERENT_COMBINER, pfa)
        sigc = synthetic_signal(1.0, 2.0, closely)
        w = combiner_weights(A, sigc.alpha, abs(sigc.indirect_rx), 1.0)
        detc = DetectorConfig(DetectorKind.COHERENT_COMBINER, gc, w)
        r = rate(sigc, A, detc, FluctuationLaw.EXPONENTIAL, Hypothesis.TARGET_ABSENT,
                 offset=30 + i)
        checks.append(_check(f"pfa_combiner_{pfa:g}", pfa, r))

    # single observation, all three laws
    pfa = 1e-3
    g1 = threshold_from_pfa(DetectorKind.SINGLE_ENERGY, pfa)
    det1 = DetectorConfig(DetectorKind.SINGLE_ENERGY, g1)
    for i, law in enumerate(FluctuationLaw):
        snr = 10.0
        sig = synthetic_signal(snr, 0.0, closely)
        r = rate(sig, C, det1, law, offset=40 + i)
        checks.append(_check(f"pd_single_{law.value}_snr{snr:g}", pd_single(law, snr, g1), r))

    # dual observation, exponential law
    g2 = threshold_from_pfa(DetectorKind.DUAL_ENERGY, pfa)
    det2 = DetectorConfig(DetectorKind.DUAL_ENERGY, g2)
    for i, (s1, s2) in enumerate(((10.0, 3.0), (5.0, 5.0), (20.0, 0.5))):
        sig = synthetic_signal(s1, s2, widely)
        r = rate(sig, A, det2, FluctuationLaw.EXPONENTIAL, offset=50 + i)
        checks.append(_check(f"pd_dual_exponential_{s1:g}_{s2:g}", pd_dual_exponential(s1, s2, g2), r))
        if s1 != s2:
            checks.append(_check(f"control_dual_as_printed_{s1:g}_{s2:g}",
                                 pd_dual_exponential_as_printed(s1, s2, g2), r, expect=False))

    # widely case b and c with a power split
    eps = 0.4
    sig = synthetic_signal(10.0, 6.0, widely)
    r = rate(sig, B, det2, FluctuationLaw.EXPONENTIAL, eps=eps, offset=60)
    checks.append(_check("pd_widely_case_b_eps0.4",
                         pd_dual_exponential(eps * 10.0, (1 - eps) * 6.0, g2), r))
    r = rate(sig, C, det1, FluctuationLaw.EXPONENTIAL, eps=eps, offset=61)
    checks.append(_check("pd_widely_case_c_eps0.4",
                         pd_single(FluctuationLaw.EXPONENTIAL, eps * 10.0 + (1 - eps) * 6.0, g1), r))

    # closely case a end to end through the configured geometry
    sc = replace(config, layout="closely").scenario(config.ris_sides[0])
    signal = sc.signal()
    snr0_target = 2.0
    signal = replace(signal, noise_power=signal.alpha**2 * 1.0 / snr0_target)
    gc = threshold_from_pfa(DetectorKind.COHERENT_COMBINER, pfa)
    w = combiner_weights(A, signal.alpha, abs(signal.indirect_rx), 1.0)
    detc = DetectorConfig(DetectorKind.COHERENT_COMBINER, gc, w)
    snr_a = sum(snr_closely(A, snr0_target, sc.gains).snr_values)
    r = rate(signal, A, detc, FluctuationLaw.EXPONENTIAL, offset=70)
    checks.append(_check("pd_closely_case_a_scenario",
                         pd_closed_form(FluctuationLaw.EXPONENTIAL, snr_a, gc,
                                        DetectorKind.COHERENT_COMBINER), r))

    # negative control: threshold raised by one after inversion
    pfa = 1e-2
    g = threshold_from_pfa(DetectorKind.SINGLE_ENERGY, pfa) + 1.0
    det = DetectorConfig(DetectorKind.SINGLE_ENERGY, g)
    sig = synthetic_signal(1.0, 0.0, closely)
    r = rate(sig, C, det, FluctuationLaw.EXPONENTIAL, Hypothesis.TARGET_ABSENT, offset=80)
    checks.append(_check("control_threshold_plus_one", pfa, r, expect=False))
    return checks


def run_validation(config: ScenarioConfig) -> tuple[str, bool]:
    checks = validation_checks(config)
    body = [(c.name, _prob(c.closed_form), _prob(c.estimate), _prob(c.stderr),
             f"{c.deviation:.3f}", "agree" if c.expect_agreement else "disagree",
             "1" if c.passed else "0") for c in checks]
    return write_csv(VALIDATION_HEADER, body), all(c.passed for c in checks)


# -- report --------------------------------------------------------------------


def run_report(config: ScenarioConfig) -> str:
    lines = [f"layout: {config.layout}",
             f"carrier frequency: {config.carrier_frequency:g} Hz (wavelength {config.lam:.6g} m)",
             f"pfa: {config.pfa:g}"]
    model = config.fluctuation_model()
    for side in config.ris_sides:
        sc = config.scenario(side)
        d = sc.derived
        ff = sc.far_field
        lines.append("")
        lines.append(f"RIS side {side:g} m ({sc.geometry.n_elements} elements)")
        lines.append(f"  rho {d.rho:.6g} m, d_t {d.d_t:.6g} m, d_r {d.d_r:.6g} m, "
                     f"path difference {d.path_difference:.6g} m")
        lines.append(f"  xi {d.xi:.6g} rad, regime {sc.regime.value}")
        for name in ("radar_target", "ris_target", "radar_ris"):
            cond = getattr(ff, name)
            lines.append(f"  far field {name}: {'ok' if cond.ok else 'VIOLATED'} "
                         f"({cond.attained:.6g} m vs {cond.required:.6g} m)")
        for w in sorted({config.bandwidth, config.bandwidth_case_b, config.bandwidth_case_c}):
            try:
                case = classify_delay_case(sc.geometry, d, TWO_TX, w).value
            except UnsupportedError:
                case = "unsupported"
            lines.append(f"  two transmit beams at W = {w:g} Hz: case {case}")
        K = sc.gains
        lines.append(f"  K_sr {K.K_sr:.6g} ({db_half_up(K.K_sr)} dB), K_st {K.K_st:.6g}")
        lines.append(f"  SNR_0 {db_half_up(sc.snr0(model.sigma_bar))} dB")
    return "\n".join(lines) + "\n"


__all__ = [
    "CLOSELY_HEADER", "WIDELY_HEADER", "VALIDATION_HEADER", "GainRow", "CurvePoint",
    "ValidationCheck", "closely_rows", "widely_points", "validation_checks", "db_half_up",
    "run_closely_table", "run_widely_curves", "run_validation", "run_report",
]
