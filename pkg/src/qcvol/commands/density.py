from collections.abc import Callable
from typing import NamedTuple

import numpy as np
import pandas as pd
from dishka import AsyncContainer

from qcvol import analytic
from qcvol.config import QuadratureConfig
from qcvol.models import DensityCurve, RunConfig

from .output import Report, write_report


class CurveSpec(NamedTuple):
    lo: float
    hi: float
    # f(x, r0)
    func: Callable[[np.ndarray, float], np.ndarray]
    with_seam: bool = False


CURVES = {
    "va": CurveSpec(0.0, 1.0, lambda a, r0: analytic.v_a(a)),
    "eta": CurveSpec(-1.0, 1.0, lambda z, r0: analytic.eta_z(z), with_seam=True),
    "kappa_mm": CurveSpec(0.0, 1.0, lambda r, r0: analytic.kappa_mm(r)),
    "kappa_unital": CurveSpec(0.0, 1.0, analytic.kappa_unital, with_seam=True),
    "kappa": CurveSpec(0.0, 1.0, analytic.kappa_general, with_seam=True),
    "fz": CurveSpec(-1.0, 1.0, analytic.fz_general, with_seam=True),
    "fz_unital": CurveSpec(-1.0, 1.0, analytic.fz_unital, with_seam=True),
}
DENSITY_NAMES = ("vaf", *CURVES, "mean")


def build_curve(name: str, r0: float, points: int, quadrature: QuadratureConfig) -> DensityCurve:
    spec = CURVES[name]
    grid = np.linspace(spec.lo, spec.hi, points)
    seams = (-r0, 0.0, r0) if spec.with_seam else ()

    normalization = analytic.integrate_1d(
        lambda x: spec.func(x, r0),
        spec.lo,
        spec.hi,
        seams,
        epsabs=quadrature.epsabs,
        epsrel=quadrature.epsrel,
        limit=quadrature.limit,
    )
    return DensityCurve(
        name=name,
        grid=grid.tolist(),
        values=np.asarray(spec.func(grid, r0)).tolist(),
        normalization=normalization,
    )


def _vaf_report(points: int, quadrature: QuadratureConfig) -> Report:
    axis = np.linspace(0.0, 1.0, points)
    a, f = np.meshgrid(axis, axis, indexing="ij")
    rows = pd.DataFrame({"a": a.ravel(), "f": f.ravel(), "value": analytic.v_af(a, f).ravel()})
    integral = analytic.integrate_v_af(epsabs=quadrature.epsabs, epsrel=quadrature.epsrel)
    return Report(rows, {"integral": integral, "analytic": analytic.vol_general()})


def _mean_report(points: int, quadrature: QuadratureConfig) -> Report:
    tolerances = {
        "epsabs": quadrature.epsabs,
        "epsrel": quadrature.epsrel,
        "limit": quadrature.limit,
    }
    r0 = np.linspace(0.0, 1.0, points)
    rows = pd.DataFrame(
        {
            "r0": r0,
            "mean_radius_general": [
                analytic.mean_radius_general(float(x), **tolerances) for x in r0
            ],
            "mean_radius_unital": analytic.mean_radius_unital(r0),
        }
    )
    return Report(rows, {"fixed_point_radius": analytic.fixed_point_radius(**tolerances)})


async def cmd_density(cfg: RunConfig, container: AsyncContainer) -> int:
    quadrature = await container.get(QuadratureConfig)

    if cfg.which == "vaf":
        report = _vaf_report(cfg.grid, quadrature)
    elif cfg.which == "mean":
        report = _mean_report(cfg.grid, quadrature)
    else:
        curve = build_curve(cfg.which, cfg.r0, cfg.grid, quadrature)
        rows = pd.DataFrame({"x": curve.grid, "value": curve.values})
        report = Report(rows, {"name": curve.name, "integral": curve.normalization})

    write_report(cfg, report)
    return 0
