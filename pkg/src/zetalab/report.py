"""Named scan grids, CSV row builders, and the regression report.

The CSV schemas here are the stable external interface of the package;
every builder returns rows of preformatted strings so the CLI and the
report writer emit byte-identical output for identical inputs.  Floats
print with 15 significant digits, exact rationals as num/den, and
nothing here reads clocks, hostnames, or thread counts, so two runs of
any command produce the same bytes.
"""

from __future__ import annotations

import cmath
import json
import math
import os
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.special import loggamma

from . import pairs as pairs_mod
from . import thresholds
from .config import Config
from .dirichlet import (
    DivisorTable,
    SumWindow,
    divisor_phase_sum_direct,
    divisor_phase_sum_hyperbola,
    phase_sum,
    vdc_bound,
)
from .errors import DomainError
from .moments import MomentSpec, integrate_moment, sixth_moment_probe, watt_ratio
from .zeta import (
    EvalSettings,
    afe_simple,
    afe_zeta_squared,
    chi_grid,
    functional_equation_residual,
    smoothed_sum,
    zeta,
)

ZETA_CSV_HEADER = "sigma,t,x_or_Y,value_re,value_im,residual,bound,ratio"
PAIR_CSV_HEADER = "k_num,k_den,l_num,l_den,word,epsilon"
MOMENT_CSV_HEADER = "sigma,j,T,value,error_estimate,panels"
DIRICHLET_CSV_HEADER = "u,t,T,k_num,k_den,l_num,l_den,abs_sum,bound,ratio"


def fmt_float(x: float) -> str:
    return f"{x:.15g}"


def fmt_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def emit_csv(header: str, rows: Iterable[Sequence[str]]) -> str:
    lines = [header]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def fe_check_grid(name: str) -> list[complex]:
    """Deterministic s-grids for the functional-equation identity.

    "coarse" is a quick 36-point smoke grid; "fine" is the 1000-point
    grid (0 < sigma < 1, |t| <= 100) the identity contract is judged
    on.  Points within 1e-3 of s = 0 or s = 1 are excluded.
    """
    if name == "coarse":
        sigmas = [0.25, 0.5, 0.75]
        ts = [-100.0, -25.0, -5.0, -1.5, -0.5, 0.5, 1.5, 5.0, 14.134725, 25.0,
              50.0, 100.0]
    elif name == "fine":
        sigmas = list(np.linspace(0.05, 0.95, 10))
        ts = list(np.linspace(-100.0, 100.0, 100))
    else:
        raise DomainError(f"unknown grid {name!r}; use coarse or fine")
    grid = []
    for sig in sigmas:
        for t in ts:
            s = complex(sig, t)
            if abs(s) < 1e-3 or abs(s - 1) < 1e-3:
                continue
            grid.append(s)
    return grid


def fe_check_rows(
    name: str, settings: EvalSettings
) -> tuple[list[list[str]], float]:
    """Residual rows over a named grid; returns (rows, max residual)."""
    rows = []
    worst = 0.0
    for s in fe_check_grid(name):
        z = zeta(s, settings)
        residual = functional_equation_residual(s, settings)
        worst = max(worst, residual)
        rows.append(
            [
                fmt_float(s.real),
                fmt_float(s.imag),
                "",
                fmt_float(z.real),
                fmt_float(z.imag),
                fmt_float(residual),
                fmt_float(1e-8),
                fmt_float(residual / 1e-8),
            ]
        )
    return rows, worst


def afe_scan_rows(
    settings: EvalSettings,
    residual_limit: float,
    t_blocks: Sequence[float] = (100.0, 1000.0),
    sigmas: Sequence[float] = (0.5, 0.75, 1.0),
    points: int = 7,
) -> tuple[list[list[str]], float]:
    """Truncated-series residuals over t in [T, 2T] with cutoff 2T.

    The residual contract is O(1) with an unspecified constant; rows
    carry residual/limit so a scan is judged against the configured
    limit (default 10), nothing sharper.
    """
    rows = []
    worst = 0.0
    for big_t in t_blocks:
        cutoff = 2 * big_t
        for sigma in sigmas:
            for t in np.linspace(big_t, 2 * big_t, points):
                value, residual = afe_simple(complex(sigma, t), cutoff, settings)
                worst = max(worst, residual)
                rows.append(
                    [
                        fmt_float(sigma),
                        fmt_float(float(t)),
                        fmt_float(cutoff),
                        fmt_float(value.real),
                        fmt_float(value.imag),
                        fmt_float(residual),
                        fmt_float(residual_limit),
                        fmt_float(residual / residual_limit),
                    ]
                )
    return rows, worst


def afe2_grid() -> list[tuple[float, float, float]]:
    """50 points (sigma, t, x): five sigmas, five t <= 500, and per
    (sigma, t) the balanced cutoff x = t/(2 pi) plus the stretched
    x = t."""
    grid = []
    for sigma in (0.3, 0.45, 0.6, 0.75, 0.9):
        for t in (50.0, 100.0, 200.0, 350.0, 500.0):
            for x in (t / (2 * math.pi), t):
                grid.append((sigma, t, x))
    return grid


def afe2_scan_rows(
    settings: EvalSettings, ratio_limit: float
) -> tuple[list[list[str]], float]:
    """Two-sum representation residuals over the 50-point grid.

    Returns (rows, worst residual/bound ratio); the configured limit
    (default 50) is what acceptance compares against.
    """
    grid = afe2_grid()
    table = DivisorTable(int(max(x for _, _, x in grid)) + 1)
    rows = []
    worst = 0.0
    for sigma, t, x in grid:
        value, residual, bound = afe_zeta_squared(
            complex(sigma, t), x, table, settings
        )
        ratio = residual / bound
        worst = max(worst, ratio)
        rows.append(
            [
                fmt_float(sigma),
                fmt_float(t),
                fmt_float(x),
                fmt_float(value.real),
                fmt_float(value.imag),
                fmt_float(residual),
                fmt_float(bound),
                fmt_float(ratio),
            ]
        )
    return rows, worst


def smooth_residual(s: complex, smoothing: float, settings: EvalSettings) -> float:
    """|smoothed series - zeta(s) - Gamma(1-s) Y^{1-s}|, the leftover
    after the two residues of the Mellin representation."""
    s = complex(s)
    value = smoothed_sum(s, smoothing, None)
    residue = cmath.exp(
        complex(loggamma(1 - s)) + (1 - s) * math.log(smoothing)
    )
    return abs(value - zeta(s, settings) - residue)


def smooth_scan_rows(
    settings: EvalSettings,
    residual_limit: float,
    s: complex = 0.75 + 20j,
    smoothings: Sequence[float] = (1e2, 1e3, 1e4),
) -> tuple[list[list[str]], list[float]]:
    """Residue-identity residuals at increasing smoothing scales; the
    bound column is limit * Y^{1/2 - sigma}."""
    rows = []
    residuals = []
    for y in smoothings:
        value = smoothed_sum(s, y, None)
        residual = smooth_residual(s, y, settings)
        bound = residual_limit * y ** (0.5 - s.real)
        residuals.append(residual)
        rows.append(
            [
                fmt_float(s.real),
                fmt_float(s.imag),
                fmt_float(y),
                fmt_float(value.real),
                fmt_float(value.imag),
                fmt_float(residual),
                fmt_float(bound),
                fmt_float(residual / bound),
            ]
        )
    return rows, residuals


def dirichlet_scan_rows(
    windows: Sequence[SumWindow],
    pair: pairs_mod.ExponentPair,
    big_t: float,
) -> list[list[str]]:
    """Pure-phase window sums against their exponent-pair comparator.

    One row per window: the window top as u, |S(N,N')|, the comparator
    T^k N^(l-k), and their ratio.  Ratios are reported, never asserted;
    the suppressed constants are unknown.
    """
    rows = []
    for w in windows:
        abs_sum = abs(phase_sum(w))
        bound = vdc_bound(w, pair, big_t)
        rows.append(
            [
                str(w.n_prime),
                fmt_float(w.t),
                fmt_float(big_t),
                str(pair.k.numerator),
                str(pair.k.denominator),
                str(pair.l.numerator),
                str(pair.l.denominator),
                fmt_float(abs_sum),
                fmt_float(bound),
                fmt_float(abs_sum / bound),
            ]
        )
    return rows


def _hyperbola_spot_max(us: Sequence[int], ts: Sequence[float]) -> float:
    table = DivisorTable(max(us))
    worst = 0.0
    for u in us:
        for t in ts:
            direct = divisor_phase_sum_direct(u, t, table)
            hyper = divisor_phase_sum_hyperbola(u, t)
            worst = max(worst, abs(hyper - direct) / (1 + abs(direct)))
    return worst


def regression_data(config: Config) -> dict:
    """Everything the regression report shows, as plain data."""
    es = config.eval_settings()
    qs = config.quadrature_settings()

    reference = pairs_mod.SEED_PAIRS["huxley32"]
    superseded = pairs_mod.SEED_PAIRS["huxley89"]
    family = [(q, pairs_mod.q_family_pair(q)) for q in range(2, 11)]
    family_rows = [
        {
            "q": q,
            "k": fmt_rational(p.k),
            "l": fmt_rational(p.l),
            "sigma": fmt_rational(thresholds.theorem2_sigma(p)),
        }
        for q, p in family
    ]
    best_q, best_pair = min(
        family, key=lambda qp: (thresholds.theorem2_sigma(qp[1]), qp[0])
    )

    enumerated = pairs_mod.enumerate_pairs([pairs_mod.SEED_PAIRS["trivial"]], 4)
    involution_ok = all(
        pairs_mod.b_process(pairs_mod.b_process(p)).key() == p.key()
        for p in enumerated
    )
    depth2 = pairs_mod.enumerate_pairs([pairs_mod.SEED_PAIRS["trivial"]], 2)
    # lists, not tuples, so the JSON form renders identically after a round trip
    depth2_keys = [
        [fmt_rational(k), fmt_rational(l)] for k, l in sorted(depth2.keys())
    ]

    ts = np.linspace(0.0, 1000.0, 64)
    chi_dev = float(
        np.max(np.abs(np.abs(chi_grid(0.5 + 1j * ts)) - 1.0))
    )
    _, fe_worst = fe_check_rows("coarse", es)
    hyper_worst = _hyperbola_spot_max(
        [1, 10, 97, 360, 1024, 2000], [0.0, 1.3, 17.77, 123.456]
    )
    s_stab = complex(0.75, 50.0)
    auto = zeta(s_stab, es)
    doubled = zeta(
        s_stab,
        EvalSettings(
            euler_maclaurin_terms=2 * max(50, math.ceil(2 * abs(s_stab.imag))),
            bernoulli_order=es.bernoulli_order,
            target_abs_error=es.target_abs_error,
        ),
    )
    em_delta = abs(auto - doubled)

    moment = integrate_moment(MomentSpec(0.75, 1, 0.0, 100.0, qs), es)
    probe = sixth_moment_probe(256.0, qs, es)
    watt_coeffs = [m ** (-0.75) for m in range(1, 9)]
    lhs, rhs, ratio = watt_ratio(200.0, 8, watt_coeffs, qs, es)

    return {
        "thresholds": {
            "reference_pair": {
                "k": fmt_rational(reference.k),
                "l": fmt_rational(reference.l),
                "sigma_pair": fmt_rational(thresholds.theorem1_pair_sigma(reference)),
                "sigma_full": fmt_rational(thresholds.theorem1_sigma(reference)),
            },
            "superseded_pair": {
                "k": fmt_rational(superseded.k),
                "l": fmt_rational(superseded.l),
                "sigma_pair": fmt_rational(thresholds.theorem1_pair_sigma(superseded)),
                "sigma_full": fmt_rational(thresholds.theorem1_sigma(superseded)),
            },
            "q_family": family_rows,
            "q_family_optimum": {
                "q": best_q,
                "k": fmt_rational(best_pair.k),
                "l": fmt_rational(best_pair.l),
                "sigma": fmt_rational(thresholds.theorem2_sigma(best_pair)),
            },
            "mu_route_sigma": fmt_rational(
                thresholds.mu_threshold(1, Fraction(32, 205)).value
            ),
            "cutoff_exponent_at_5_6": fmt_rational(
                thresholds.y_cutoff_exponent(Fraction(5, 6))
            ),
        },
        "properties": {
            "b_involution_pairs_checked": len(enumerated),
            "b_involution_ok": involution_ok,
            "depth2_closure": depth2_keys,
            "chi_modulus_max_deviation": chi_dev,
            "fe_residual_max_coarse": fe_worst,
            "hyperbola_max_relative": hyper_worst,
            "em_stability_delta": em_delta,
        },
        "moments": {
            "spot": {
                "sigma": 0.75,
                "j": 1,
                "t_max": 100.0,
                "value": moment.value,
                "error_estimate": moment.error_estimate,
                "panels": moment.panel_count,
            },
            "sixth_probe_T256": probe,
            "watt_T200_M8": {"lhs": lhs, "rhs": rhs, "ratio": ratio},
        },
    }


def render_report(data: dict) -> str:
    """Human-readable regression table from regression_data output."""
    th = data["thresholds"]
    pr = data["properties"]
    mo = data["moments"]
    lines = [
        "regression report: hybrid fourth-moment laboratory",
        "",
        "exact rational thresholds",
        (
            f"  second-power weight, pair ({th['reference_pair']['k']}, "
            f"{th['reference_pair']['l']}): sigma_pair "
            f"{th['reference_pair']['sigma_pair']}, sigma_full "
            f"{th['reference_pair']['sigma_full']}"
        ),
        (
            f"  second-power weight, superseded pair ({th['superseded_pair']['k']}, "
            f"{th['superseded_pair']['l']}): sigma_pair "
            f"{th['superseded_pair']['sigma_pair']}, sigma_full "
            f"{th['superseded_pair']['sigma_full']}"
        ),
        (
            f"  fourth-power weight, family optimum: q = {th['q_family_optimum']['q']}, "
            f"pair ({th['q_family_optimum']['k']}, {th['q_family_optimum']['l']}), "
            f"sigma {th['q_family_optimum']['sigma']}"
        ),
        f"  mu route at mu = 32/205: sigma {th['mu_route_sigma']}",
        f"  cutoff exponent at sigma = 5/6: {th['cutoff_exponent_at_5_6']}",
        "",
        "property suite",
        (
            f"  B involution on {pr['b_involution_pairs_checked']} pairs: "
            f"{'pass' if pr['b_involution_ok'] else 'FAIL'}"
        ),
        f"  depth-2 closure of (0, 1): {pr['depth2_closure']}",
        f"  chi modulus max deviation (64 spots, t <= 1000): {fmt_float(pr['chi_modulus_max_deviation'])}",
        f"  functional-equation residual max (coarse grid): {fmt_float(pr['fe_residual_max_coarse'])}",
        f"  hyperbola vs direct max relative: {fmt_float(pr['hyperbola_max_relative'])}",
        f"  euler-maclaurin doubling delta at 3/4+50i: {fmt_float(pr['em_stability_delta'])}",
        "",
        "moment spot checks",
        (
            f"  sigma 3/4, j 1, T 100: value {fmt_float(mo['spot']['value'])}, "
            f"error {fmt_float(mo['spot']['error_estimate'])}, "
            f"panels {mo['spot']['panels']}"
        ),
        f"  sixth-moment probe at T 256: {fmt_float(mo['sixth_probe_T256'])}",
        (
            f"  watt ratio T 200, M 8, a_m = m^(-3/4): lhs {fmt_float(mo['watt_T200_M8']['lhs'])}, "
            f"rhs {fmt_float(mo['watt_T200_M8']['rhs'])}, "
            f"ratio {fmt_float(mo['watt_T200_M8']['ratio'])}"
        ),
    ]
    return "\n".join(lines) + "\n"


def regression_report(config: Config) -> str:
    """The stdout form of the regression table."""
    return render_report(regression_data(config))


def write_regression_report(config: Config, out_dir: str) -> list[str]:
    """Write the text and JSON forms; returns the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    data = regression_data(config)
    text = render_report(data)
    txt_path = os.path.join(out_dir, "regression_report.txt")
    json_path = os.path.join(out_dir, "regression_report.json")
    with open(txt_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(data, indent=2, sort_keys=True))
        fh.write("\n")
    return [txt_path, json_path]
