import pandas as pd
from dishka import AsyncContainer

from qcvol.models import ChannelKind, RunConfig
from qcvol.rng import RngStream
from qcvol.services.abstractions import MonteCarloService
from qcvol.utils.mapping import GENERAL_COLUMNS, UNITAL_COLUMNS

from .output import Report, write_report


async def cmd_sample(cfg: RunConfig, container: AsyncContainer) -> int:
    service = await container.get(MonteCarloService)
    rows = await service.sample_channels(
        cfg.kind, cfg.n, RngStream(cfg.seed), cfg.workers, cfg.method
    )

    columns = GENERAL_COLUMNS if cfg.kind is ChannelKind.general else UNITAL_COLUMNS
    write_report(cfg, Report(pd.DataFrame(rows, columns=list(columns)), {}))
    return 0
