import pandas as pd
from dishka import AsyncContainer

from qcvol.analytic import vol_general, vol_unital
from qcvol.models import ChannelKind, RunConfig
from qcvol.rng import RngStream
from qcvol.services.abstractions import MonteCarloService

from .output import Report, write_report


async def cmd_volume(cfg: RunConfig, container: AsyncContainer) -> int:
    service = await container.get(MonteCarloService)
    estimate = await service.estimate_volume(cfg.kind, cfg.n, RngStream(cfg.seed), cfg.workers)

    analytic = vol_general() if cfg.kind is ChannelKind.general else vol_unital()
    row = {
        "estimate": estimate.value,
        "std_error": estimate.std_error,
        "analytic": analytic,
        "z_score": estimate.z_score(analytic),
        "n": estimate.n_trials,
        "accepted": estimate.n_accepted,
        "lambda_volume": estimate.lambda_volume,
        "acceptance_rate": estimate.acceptance_rate,
    }
    write_report(cfg, Report(pd.DataFrame([row]), {"kind": cfg.kind.value}))
    return 0
