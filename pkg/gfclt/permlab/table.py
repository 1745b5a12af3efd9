from typing import Dict, Optional

import attrs
import numpy as np
import pandas as pd

from gfclt.enums import TableMode


def _as_counts(counts) -> Dict[int, float]:
    return {int(k): v for k, v in sorted(((int(k), v) for k, v in counts.items()))}


def _check_counts(instance, attribute, value):
    if any(v < 0 for v in value.values()):
        raise ValueError("Counts must be nonnegative")


@attrs.define(frozen=True)
class DistTable:
    """
    Distribution of an integer statistic at size ``n``: exact counts (total n!), Monte Carlo counts (total =
    samples) or probabilities read from a generating function (total 1)
    """

    n: int
    counts: Dict[int, float] = attrs.field(converter=_as_counts, validator=_check_counts)
    mode: TableMode = TableMode.exact
    seed: Optional[int] = None

    @property
    def total(self):
        return sum(self.counts.values())

    @property
    def values(self) -> np.ndarray:
        return np.array(list(self.counts.keys()), dtype=float)

    @property
    def weights(self) -> np.ndarray:
        return np.array(list(self.counts.values()), dtype=float)

    def probabilities(self) -> Dict[int, float]:
        total = self.total
        return {k: v / total for k, v in self.counts.items()}

    def mean(self) -> float:
        return float(np.average(self.values, weights=self.weights))

    def variance(self) -> float:
        return float(np.average((self.values - self.mean()) ** 2, weights=self.weights))

    def merge(self, other: "DistTable") -> "DistTable":
        if (other.n, other.mode) != (self.n, self.mode):
            raise ValueError(f"Cannot merge a {other.mode.value} table at n={other.n} into n={self.n}")
        counts = dict(self.counts)
        for k, v in other.counts.items():
            counts[k] = counts.get(k, 0) + v
        return DistTable(n=self.n, counts=counts, mode=self.mode, seed=self.seed)

    def summary(self) -> dict:
        n = max(self.n, 1)
        return {
            "mean": self.mean(),
            "variance": self.variance(),
            "mean_over_n": self.mean() / n,
            "var_over_n": self.variance() / n,
        }

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode.value,
            "seed": self.seed,
            "counts": {str(k): v for k, v in self.counts.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DistTable":
        return cls(n=data["n"], counts=data["counts"], mode=TableMode.from_str(data["mode"]), seed=data.get("seed"))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"value": list(self.counts.keys()), "count": list(self.counts.values())})
