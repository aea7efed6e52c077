"""Central tolerance configuration.

Every numeric tolerance used by the library lives in one record so that the
defaults are documented in a single place and can be overridden coherently
(e.g. by CLI flags).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance knobs, all dimensionless.

    normalization: allowed |sum(mass) - 1| on input before rescaling.
    equality:      strict floating-point equality checks (e.g. stored sums).
    identity:      algebraic identities that hold exactly in real arithmetic.
    search:        golden-section interval width / bisection residual.
    tv_match:      total variation constraint matching in the sampler.
    """

    normalization: float = 1e-9
    equality: float = 1e-12
    identity: float = 1e-10
    search: float = 1e-10
    tv_match: float = 1e-9


DEFAULT_TOLS = Tolerances()
