"""Observations of Y grouped by the discrete value of X."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .exceptions import PurityLensError

Label = Hashable


def _sort_key(label):
    # numbers before strings so mixed label sets stay sortable
    return (isinstance(label, str), label)


@dataclass(frozen=True)
class GroupedSamples:
    """Y-observations partitioned by the value of X.

    ``groups`` maps each x-label to a 1-D float array. Label order is the
    iteration order of the mapping and is preserved everywhere downstream.
    """

    groups: Mapping[Label, np.ndarray]

    def __post_init__(self):
        cleaned = {}
        for label, values in self.groups.items():
            arr = np.asarray(values, dtype=float).ravel()
            if arr.size == 0:
                raise PurityLensError(f"group {label!r} is empty")
            if not np.all(np.isfinite(arr)):
                raise PurityLensError(f"group {label!r} contains non-finite values")
            arr.setflags(write=False)
            cleaned[label] = arr
        if len(cleaned) < 2:
            raise PurityLensError("need at least 2 groups")
        object.__setattr__(self, "groups", cleaned)

    @classmethod
    def from_pairs(cls, x: Iterable, y: Iterable) -> "GroupedSamples":
        """Group paired observations; labels come out sorted."""
        x = list(x)
        y = np.asarray(list(y), dtype=float)
        if len(x) != len(y):
            raise PurityLensError(f"x and y lengths differ ({len(x)} != {len(y)})")
        buckets: dict = {}
        for label, value in zip(x, y):
            buckets.setdefault(label, []).append(value)
        ordered = sorted(buckets, key=_sort_key)
        return cls({label: np.array(buckets[label]) for label in ordered})

    @property
    def labels(self) -> list:
        return list(self.groups)

    @property
    def sizes(self) -> dict:
        return {label: len(v) for label, v in self.groups.items()}

    def pooled(self) -> np.ndarray:
        return np.concatenate(list(self.groups.values()))

    def map_values(self, fn) -> "GroupedSamples":
        """Apply ``fn`` to every group's value array."""
        return GroupedSamples({k: fn(v) for k, v in self.groups.items()})

    def reorder(self, labels: Iterable) -> "GroupedSamples":
        labels = list(labels)
        if sorted(map(repr, labels)) != sorted(map(repr, self.groups)):
            raise PurityLensError("reorder needs a permutation of the existing labels")
        return GroupedSamples({k: self.groups[k] for k in labels})

    def __getitem__(self, label) -> np.ndarray:
        return self.groups[label]

    def __len__(self) -> int:
        return len(self.groups)
