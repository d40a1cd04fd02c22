"""Run configuration shared by the CLI and the library defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_PREC = "MASSBOUND_PREC_BITS"

DEFAULT_PREC = 128
DEFAULT_CEILING = 512
# Truncation of the prime sum in the A constant.  The integral tail bound
# log(X)/(X-1) + 1/(X-1) is ~7.8e-6 at 2e6, keeping the enclosure width
# below the 1e-5 the constants checks require.
DEFAULT_PRIME_BOUND = 2_000_000


def default_prec() -> int:
    raw = os.environ.get(ENV_PREC)
    if raw:
        try:
            p = int(raw)
            if p >= 16:
                return p
        except ValueError:
            pass
    return DEFAULT_PREC


@dataclass(frozen=True)
class RunConfig:
    prec_bits: int = DEFAULT_PREC
    prec_ceiling: int = DEFAULT_CEILING
    prime_sum_bound: int = DEFAULT_PRIME_BOUND
    out_format: str = "json"     # json | csv | text
    jobs: int = 1

    def __post_init__(self):
        if self.prec_bits < 16:
            raise ValueError("precision must be at least 16 bits")
        if self.prec_ceiling < self.prec_bits:
            raise ValueError("precision ceiling below working precision")
        if self.jobs < 1:
            raise ValueError("parallelism must be >= 1")
        if self.out_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.out_format!r}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        kw = {"prec_bits": default_prec()}
        kw.update(overrides)
        return cls(**kw)
