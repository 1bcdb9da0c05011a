"""Exception types shared across the package.

Contract violations (bad arguments, malformed configs) raise ValueError or
ConfigError.  Everything else here is a *domain* outcome: the computation ran
but the mathematical situation does not admit the requested answer.
"""


class ConfigError(ValueError):
    """Configuration file or dict does not match the documented schema."""


class BandCollision(Exception):
    """Floquet multipliers too close to the unit circle to split stable/unstable."""


class PoleDetected(Exception):
    """Surface impedance evaluated at (numerically) a pole: flux component vanishes."""


class ParityAmbiguous(Exception):
    """Band-edge Bloch state has no clearly suppressed component."""


class RatioInconsistent(Exception):
    """Reflection ratios of the edge Bloch mode disagree across offsets."""


class NoSignChange(Exception):
    """Real impedance scan over the gap found no sign change to bracket."""


class PhaseRefinementExhausted(Exception):
    """Contour phase tracking could not reach the step bound within max depth."""


class PoleOnContour(Exception):
    """An impedance pole flag was raised on a winding contour sample."""


class Diverged(Exception):
    """Newton refinement failed to converge within the iteration budget."""


class StepOutOfWindow(Exception):
    """Newton iterate left the certified gap window."""


class StepUnderflow(Exception):
    """Damping continuation step fell below the minimum step size."""


class ContinuationBreakdown(Exception):
    """Band-curve continuation failed after step halving; carries last good state."""


class WindowInvaded(Exception):
    """Candidate gap window contains (or grazes) a band point."""


class NotARoot(Exception):
    """Mode synthesis requested at a frequency that is not an impedance root."""
