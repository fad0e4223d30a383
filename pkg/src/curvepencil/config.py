"""Global tuning knobs, bundled so callers can thread one object through."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Precision and iteration policy.

    precision_start: initial truncation order for power series work.
    precision_cap: escalation limit; passing it raises PrecisionExhausted.
    max_iterations: cap on pencil steps per branch.
    factor_degree_bound: largest degree for which irreducibility analysis
        over an extension tower is attempted; beyond it we fail loudly.
    """

    precision_start: int = 32
    precision_cap: int = 4096
    max_iterations: int = 64
    factor_degree_bound: int = 8

    def precisions(self):
        """Yield the escalation ladder start, 2*start, ... up to the cap."""
        p = self.precision_start
        while p <= self.precision_cap:
            yield p
            p *= 2


DEFAULT = Config()
