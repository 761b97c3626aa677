"""Exception types raised by the toolkit."""


class BiframeError(Exception):
    """Base class for all toolkit errors."""


class DescriptorMismatch(BiframeError, ValueError):
    """Operands live in different algebras."""


class ShapeMismatch(BiframeError, ValueError):
    """Module ranks, block shapes or node sets do not agree."""


class NotPositiveError(BiframeError, ValueError):
    """An element expected to be positive is not, within tolerance."""


class NotSelfAdjointError(BiframeError, ValueError):
    """An order comparison was requested on a non-self-adjoint operator.

    Attributes
    ----------
    deviation : float
        The norm of ``T - T*``.
    """

    def __init__(self, deviation, message=None):
        self.deviation = float(deviation)
        super().__init__(message or f"operator is not self-adjoint: ||T - T*|| = {self.deviation:.3e}")


class SingularError(BiframeError, ValueError):
    """Inversion of a singular (or too badly conditioned) element.

    Attributes
    ----------
    block : int
        Index of the offending algebra block.
    sigma_min : float
        Smallest singular value found in that block.
    """

    def __init__(self, block, sigma_min, message=None):
        self.block = int(block)
        self.sigma_min = float(sigma_min)
        super().__init__(
            message or f"block {self.block} is singular (min singular value {self.sigma_min:.3e})"
        )
