import datetime
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "SweepProgress",
]

_RATE_SAMPLES = 24


@dataclass
class _LastUpdate:
    seconds_since_start: float
    done: int
    remaining: int


class SweepProgress:
    """Rate-limited progress lines for long evaluation sweeps.

    Call the instance with the number of evaluations done so far. A line is passed to ``print_func`` at most
    once per wall-clock second and once per percent, e.g.
    ``[ 42%] (done:  840, remaining: 1160, total: 2000) ETA: 0:00:03, 310.2 evals/s``.
    The rate is the median of pairwise slopes over the recent updates and a geometrically thinned older tail.
    """
    _start: datetime.datetime
    _updates: list[_LastUpdate]
    _print_func: Optional[Callable[[str], None]]
    _total: int
    _unit: str
    _last_print_time: int
    _last_print_pct: int

    def __init__(self, total: int, print_func: Optional[Callable[[str], None]], unit: str = "evals"):
        if print_func is not None and not callable(print_func):
            raise TypeError("The print_func argument must be callable.")
        if total < 0:
            raise ValueError("The total must be nonnegative.")
        self._start = datetime.datetime.now()
        self._updates = list[_LastUpdate]()
        self._print_func = print_func
        self._total = total
        self._unit = unit
        self._last_print_time = -1
        self._last_print_pct = -1

    @property
    def total(self) -> int:
        return self._total

    def __call__(self, done: int):
        if self._print_func is None or self._total == 0:
            return
        done = min(done, self._total)
        if self._updates and done == self._updates[-1].done:
            return
        seconds = self._seconds_since_start()
        self._updates.append(_LastUpdate(seconds, done, self._total - done))
        self._check_print()

    def _check_print(self):
        prev = self._updates[-1]
        finished = prev.remaining == 0
        if round(prev.seconds_since_start) == self._last_print_time and not finished:
            return
        percent = round((prev.done / self._total) * 100)
        if percent == self._last_print_pct:
            return
        self._last_print_pct = percent
        total_s = str(self._total)
        done_s = str(prev.done).rjust(len(total_s))
        remain_s = str(prev.remaining).rjust(len(total_s))
        msg = [f"[{percent:3}%] (done: {done_s}, remaining: {remain_s}, total: {total_s})"]
        slope = self._estimate()
        if slope is not None and slope > 0.0:
            eta_str = str(datetime.timedelta(seconds=round(prev.remaining / slope)))
            msg.append(f"ETA: {eta_str}, {slope:.1f} {self._unit}/s")
        self._print_func(" ".join(msg))
        self._last_print_time = round(prev.seconds_since_start)

    def _seconds_since_start(self) -> float:
        return (datetime.datetime.now() - self._start).total_seconds()

    def _estimate(self) -> Optional[float]:
        count = len(self._updates)
        if count < 6:
            return None
        # every update from the last few, then geometrically sparser further back
        lags = np.unique(np.rint(np.geomspace(1, count, num=min(count, _RATE_SAMPLES))).astype(int))
        sample = [self._updates[count - lag] for lag in lags]
        seconds = np.array([u.seconds_since_start for u in sample])
        done = np.array([u.done for u in sample], dtype=np.float64)
        upper = np.triu_indices(len(sample), k=1)
        elapsed = (seconds[:, None] - seconds[None, :])[upper]
        advanced = (done[:, None] - done[None, :])[upper]
        positive = elapsed > 0.0
        if np.count_nonzero(positive) < 4:
            return None
        return float(np.median(advanced[positive] / elapsed[positive]))
