"""Exception types shared across the package.

Every error signals a violated precondition or a numerical contract
failure; computations never return NaN/inf silently.
"""


class DarbouxError(Exception):
    """Base class for all package errors."""


class DegenerateModulus(DarbouxError):
    """Modulus with k^2 in {0, 1} (or non-finite), where the torus degenerates."""


class NonConvergence(DarbouxError):
    """An iteration (AGM, theta series) failed to contract within its cap."""


class PoleProximity(DarbouxError):
    """Evaluation point within the configured guard radius of a pole."""


class NomeOutOfDisc(DarbouxError):
    """Nome with |q| >= 1; theta series undefined."""


class LowerHalfPlane(DarbouxError):
    """tau with Im(tau) <= 0 where the upper half-plane is required."""


class ParabolicImage(DarbouxError):
    """An anharmonic map produced a real tau (degenerate lattice)."""


class LogarithmicCase(DarbouxError):
    """Exponent parameter in {-3/2, -5/2, ...}: the series solution is
    generically logarithmic and outside this package's scope."""


class CoefficientOverflow(DarbouxError):
    """Recursion coefficients exceeded the representable range even after
    rescaling; caller must renormalize or reduce the truncation order."""


class OutsideConvergence(DarbouxError):
    """Series evaluation requested outside the certified convergence domain."""


class DegenerateRecursion(DarbouxError):
    """Some M_m vanishes inside the needed index range."""


class ZeroPivot(DarbouxError):
    """A continued-fraction partial denominator vanished exactly; retry with
    a nudged accessory parameter."""


class DepthUnstable(DarbouxError):
    """A scanner root moved more than tolerance when the continued-fraction
    depth was doubled."""


class ModulusOnUnitCircle(DarbouxError):
    """|k| = 1: the two candidate convergence radii coincide."""


class InsufficientData(DarbouxError):
    """Not enough coefficients for an asymptotic ratio estimate."""


class DegenerateWronskian(DarbouxError):
    """Wronskian indistinguishable from zero: the two branches are
    proportional (resonance warning)."""


class UntrustedCalibration(DarbouxError):
    """A finite-difference report whose calibration run failed its bound."""


class InconclusiveAdjudication(DarbouxError):
    """Both recursion variants pass the residual oracle (possible only when
    the disputed term vanishes)."""
