"""Empirical distributions and Kolmogorov-Smirnov goodness-of-fit tests.

p-values use the asymptotic Kolmogorov law, so samples below MIN_KS_SAMPLE are refused.
"""

from collections.abc import Callable, Iterable

import numpy as np
from scipy import stats

from qcvol.errors import SampleTooSmallError
from qcvol.models import KsResult

MIN_KS_SAMPLE = 100


class EmpiricalDistribution:
    """Sorted sample with an optional histogram."""

    def __init__(self, values) -> None:
        self.values = np.sort(np.asarray(values, dtype=np.float64).ravel())
        self.values.setflags(write=False)
        self.bin_edges: np.ndarray | None = None
        self.counts: np.ndarray | None = None

    @classmethod
    def merge(cls, parts: Iterable["EmpiricalDistribution"]) -> "EmpiricalDistribution":
        return cls(np.concatenate([part.values for part in parts]))

    def __len__(self) -> int:
        return self.values.shape[0]

    def mean(self) -> float:
        return float(np.mean(self.values))

    def std_error(self) -> float:
        n = len(self)
        if n < 2:
            return 0.0
        return float(np.std(self.values, ddof=1) / np.sqrt(n))

    def histogram(
        self, bins: int, value_range: tuple[float, float] | None = None
    ) -> tuple[np.ndarray, np.ndarray]:
        """Bin the sample; values outside `value_range` land in the end bins."""
        values = self.values
        if value_range is not None:
            values = np.clip(values, *value_range)

        counts, edges = np.histogram(values, bins=bins, range=value_range)
        self.bin_edges, self.counts = edges, counts
        return edges, counts

    def density(self, bins: int, value_range: tuple[float, float] | None = None):
        """Bin centres and the normalized histogram density."""
        edges, counts = self.histogram(bins, value_range)
        widths = np.diff(edges)
        centres = (edges[:-1] + edges[1:]) / 2.0
        return centres, counts / (max(len(self), 1) * widths)

    def __repr__(self) -> str:
        return f"EmpiricalDistribution(n={len(self)})"


def _require_sample(n: int) -> None:
    if n == 0:
        raise SampleTooSmallError("empty sample")
    if n < MIN_KS_SAMPLE:
        raise SampleTooSmallError(f"KS p-values need at least {MIN_KS_SAMPLE} values, got {n}")


def kolmogorov_p_value(d: float, effective_n: float) -> float:
    return float(np.clip(stats.kstwobign.sf(np.sqrt(effective_n) * d), 0.0, 1.0))


def ks_test(
    e: EmpiricalDistribution, cdf: Callable[[np.ndarray], np.ndarray], label: str = ""
) -> KsResult:
    n = len(e)
    _require_sample(n)

    d = float(stats.kstest(e.values, cdf, method="asymp").statistic)
    return KsResult(d_statistic=d, p_value=kolmogorov_p_value(d, n), n=n, label=label)


def ks_two_sample(x, y, label: str = "") -> KsResult:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    n, m = x.shape[0], y.shape[0]
    _require_sample(min(n, m))

    d = float(stats.ks_2samp(x, y, method="asymp").statistic)
    return KsResult(d_statistic=d, p_value=kolmogorov_p_value(d, n * m / (n + m)), n=n, label=label)
