import pandas as pd
from dishka import AsyncContainer

from qcvol.analytic import fixed_point_radius
from qcvol.config import QuadratureConfig
from qcvol.models import ChannelKind, RunConfig
from qcvol.rng import RngStream
from qcvol.services.abstractions import MonteCarloService

from .output import Report, write_report


async def cmd_iterate(cfg: RunConfig, container: AsyncContainer) -> int:
    service = await container.get(MonteCarloService)
    trajectory = await service.iterate_dynamics(
        cfg.kind, cfg.r0, cfg.steps, cfg.n, RngStream(cfg.seed), cfg.method
    )

    rows = pd.DataFrame([step.model_dump() for step in trajectory])
    summary = {}
    if cfg.kind is ChannelKind.general:
        quadrature = await container.get(QuadratureConfig)
        summary["fixed_point_radius"] = fixed_point_radius(
            epsabs=quadrature.epsabs, epsrel=quadrature.epsrel, limit=quadrature.limit
        )

    write_report(cfg, Report(rows, summary))
    return 0
