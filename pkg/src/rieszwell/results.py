"""Result record returned by every evaluation route."""

from dataclasses import dataclass

METHOD_CLOSED = "closed"
METHOD_ORACLE = "oracle"
METHOD_HYBRID = "hybrid"

_METHODS = (METHOD_CLOSED, METHOD_ORACLE, METHOD_HYBRID)


def mixed_diff(value, reference) -> float:
    """Mixed (absolute + relative) discrepancy |v - r| / (1 + |r|)."""
    return abs(value - reference) / (1.0 + abs(reference))


@dataclass(frozen=True)
class EvalResult:
    """Value of an operation together with quality metadata.

    ``err_estimate`` is an absolute error estimate (0.0 for exact
    special cases).  ``degraded`` marks results from an ill-conditioned
    regime; it always comes with a ``degraded_cause`` code.  ``n_evals``
    counts kernel evaluations (integrand points for quadrature routes,
    incomplete-Gamma calls for closed routes).
    """

    value: float | complex
    err_estimate: float = 0.0
    method: str = METHOD_CLOSED
    degraded: bool = False
    degraded_cause: str | None = None
    n_evals: int = 0

    def __post_init__(self):
        if self.err_estimate < 0.0:
            raise ValueError("err_estimate must be >= 0")
        if self.method not in _METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.degraded and not self.degraded_cause:
            raise ValueError("degraded results must carry a cause code")
