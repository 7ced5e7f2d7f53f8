from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances (max-norm) used when validating operators.

    ``entropy_reject`` is the most negative eigenvalue an entropy routine will
    silently clamp to zero; anything below raises.
    """

    hermitian: float = 1e-9
    trace: float = 1e-9
    psd: float = 1e-9
    norm: float = 1e-12
    schmidt_cutoff: float = 1e-10
    entropy_reject: float = 1e-6
    distribution: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()
