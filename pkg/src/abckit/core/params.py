"""Named parameter vectors."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ParamVector:
    """A point in parameter space with named components.

    Immutable: the value array is copied on construction and marked
    read-only, so instances are safe to share between workers.
    """

    names: tuple[str, ...]
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        values = np.array(self.values, dtype=float).reshape(-1)
        if len(names) != values.size:
            raise ValueError(
                f"{len(names)} names but {values.size} values"
            )
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"non-finite parameter values: {values}")
        values.flags.writeable = False
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "values", values)

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.names.index(name)])

    def __len__(self) -> int:
        return len(self.names)

    def as_dict(self) -> dict[str, float]:
        return {n: float(v) for n, v in zip(self.names, self.values)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamVector):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.values, other.values)
