"""Run configuration shared by the pipeline and the command line."""

from __future__ import annotations

from dataclasses import dataclass

METHOD_NAMES = (
    "neighborhood",
    "tfidf",
    "textrank",
    "singlerank",
    "positionrank",
    "ensemble-tfidf",
    "kemeny",
)


@dataclass(frozen=True)
class RunConfig:
    """Hyperparameters for one extraction or evaluation run.

    The defaults are the reference benchmark configuration. Passing None
    for t1 keeps every neighborhood a singleton; None for t2 makes the
    jump vector uniform.
    """

    w: int = 10
    m: int = 8
    t1: float | None = 0.7
    t2: float | None = 0.7
    d: float = 0.85
    tolerance: float = 1e-4
    max_iterations: int = 100
    method: str = "neighborhood"
    embeddings_path: str | None = None
    macro: bool = False
    filter_single_words: bool = True

    def __post_init__(self) -> None:
        if self.w < 1:
            raise ValueError(f"window size must be at least 1, got {self.w}")
        if self.m < 1:
            raise ValueError(f"output size must be at least 1, got {self.m}")
        for name, value in (("t1", self.t1), ("t2", self.t2)):
            if value is not None and not -1.0 <= value <= 1.0:
                raise ValueError(
                    f"{name} must lie in [-1, 1] or be omitted, got {value}"
                )
        if not 0.0 < self.d < 1.0:
            raise ValueError(
                f"damping factor must lie strictly in (0, 1), got {self.d}"
            )
        if self.tolerance <= 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(
                f"iteration budget must be at least 1, got {self.max_iterations}"
            )
        if self.method not in METHOD_NAMES:
            valid = ", ".join(METHOD_NAMES)
            raise ValueError(f"unknown method {self.method!r}; expected one of {valid}")

    def as_dict(self) -> dict:
        """Stable field order for config echoes in reports."""
        return {
            "method": self.method,
            "w": self.w,
            "m": self.m,
            "t1": self.t1,
            "t2": self.t2,
            "d": self.d,
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
            "embeddings_path": self.embeddings_path,
            "macro": self.macro,
            "filter_single_words": self.filter_single_words,
        }
