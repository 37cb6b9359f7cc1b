import logging

import pandas as pd
from dishka import AsyncContainer

from qcvol import analytic
from qcvol.config import ValidationConfig
from qcvol.errors import DomainError
from qcvol.models import ChannelKind, RunConfig
from qcvol.rng import RngStream
from qcvol.services.abstractions import MonteCarloService
from qcvol.stats import ks_test

from .output import Report, write_report

logger = logging.getLogger(__name__)


def reference_law(kind: ChannelKind, r0: float):
    """(density, cdf, mean) of the output radius for input radius r0."""
    if kind is ChannelKind.unital:
        if r0 == 0.0:
            raise DomainError("unital channels fix the maximally mixed state; use r0 > 0")
        return (
            lambda r: analytic.kappa_unital(r, r0),
            lambda r: analytic.radial_cdf_unital(r, r0),
            analytic.mean_radius_unital(r0),
        )

    return (
        lambda r: analytic.kappa_general(r, r0),
        lambda r: analytic.radial_cdf_general(r, r0),
        analytic.mean_radius_general(r0),
    )


async def cmd_push(cfg: RunConfig, container: AsyncContainer) -> int:
    service = await container.get(MonteCarloService)
    validation_config = await container.get(ValidationConfig)
    density, cdf, mean = reference_law(cfg.kind, cfg.r0)

    radii = await service.pushforward_radii(
        cfg.kind, cfg.r0, cfg.n, RngStream(cfg.seed), cfg.workers, cfg.method
    )
    ks = ks_test(radii, cdf, label=f"{cfg.kind.value}:{cfg.r0}")
    centres, empirical = radii.density(cfg.bins, (0.0, 1.0))

    rows = pd.DataFrame(
        {"r": centres, "empirical_density": empirical, "analytic_density": density(centres)}
    )
    summary = {
        "ks_d": ks.d_statistic,
        "ks_p": ks.p_value,
        "mean": radii.mean(),
        "std_error": radii.std_error(),
        "analytic_mean": float(mean),
    }
    write_report(cfg, Report(rows, summary))

    if ks.p_value < validation_config.p_threshold:
        logger.warning("pushforward radii reject the analytic law, p = %s", ks.p_value)
        return 1
    return 0
