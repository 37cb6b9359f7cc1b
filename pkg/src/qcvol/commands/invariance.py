import logging

import pandas as pd
from dishka import AsyncContainer

from qcvol.config import ValidationConfig
from qcvol.models import KsResult, RunConfig
from qcvol.rng import RngStream
from qcvol.services.abstractions import MonteCarloService

from .output import Report, write_report

logger = logging.getLogger(__name__)


def verdict(results: list[KsResult], validation_config: ValidationConfig) -> tuple[int, bool]:
    """Number of p-values below the threshold and whether that count is tolerable."""
    failures = sum(result.p_value < validation_config.p_threshold for result in results)
    return failures, failures <= validation_config.max_rotation_failures


async def cmd_invariance(cfg: RunConfig, container: AsyncContainer) -> int:
    service = await container.get(MonteCarloService)
    validation_config = await container.get(ValidationConfig)

    results = await service.invariance_test(
        cfg.rotations, cfg.n, RngStream(cfg.seed), cfg.distortion, cfg.workers, cfg.method
    )
    failures, passed = verdict(results, validation_config)

    rows = pd.DataFrame(
        [
            {
                "rotation": int(result.label.split(":")[1]),
                "side": result.label.split(":")[0],
                "d_statistic": result.d_statistic,
                "p_value": result.p_value,
            }
            for result in results
        ]
    )
    summary = {
        "failures": failures,
        "allowed_failures": validation_config.max_rotation_failures,
        "verdict": "PASS" if passed else "FAIL",
    }
    write_report(cfg, Report(rows, summary))

    if not passed:
        logger.warning("rotation invariance rejected in %s of %s tests", failures, len(results))
        return 1
    return 0
