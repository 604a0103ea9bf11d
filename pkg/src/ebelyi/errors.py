"""Error taxonomy shared across the package.

Input-shaped problems get their own classes so the command line tool can
map them to exit codes; numeric-layer failures (RecognitionFailed,
AmbiguousMatch) are retryable by doubling the working precision.
"""


class EbelyiError(Exception):
    """Base class for all package errors."""


class InputError(EbelyiError):
    """Malformed user input (bad cycle syntax, out-of-range entries)."""


class DegreeMismatch(InputError):
    """A permutation entry exceeds the declared degree."""


class RelationViolated(InputError):
    """sigma_a then sigma_b then sigma_c is not the identity."""


class NotTransitive(InputError):
    """The triple does not generate a transitive group."""


class NotEuclidean(InputError):
    """The declared or inferred orders are not a Euclidean signature."""


class NonIntegral(EbelyiError):
    """A quantity that must be an integer (rotation index) is not."""


class RecognitionFailed(EbelyiError):
    """A numeric value could not be certified as an exact algebraic one."""


class AmbiguousMatch(RecognitionFailed):
    """Two exact candidates both match a numeric value within tolerance.

    Subclasses RecognitionFailed so a precision retry loop picks it up:
    more bits separate the candidates.
    """


class NotAKernel(EbelyiError):
    """A polynomial handed to the isogeny step is not a kernel polynomial."""


class NotInvariant(EbelyiError):
    """The composite map is not a function of the quotient variable."""


class ShapeViolation(EbelyiError):
    """A curve equation lacks the zero coefficient its symmetry requires."""


class UnsupportedCase(EbelyiError):
    """A vertex-role combination that normalization should have removed."""


class VerificationFailure(EbelyiError):
    """The finished map fails its ramification checks."""


class ZeroDivisor(EbelyiError):
    """Inversion hit a zero divisor in a quotient ring K[t]/(g).

    Carries a proper monic factor of the modulus so the caller can split
    g and retry in the smaller quotient.
    """

    def __init__(self, factor):
        super().__init__("zero divisor; modulus splits")
        self.factor = tuple(factor)


class SquareDiscriminant(EbelyiError):
    """A quadratic algebra collapsed: its discriminant is a square.

    Carries the square root so the caller can redo the computation in
    the base ring.
    """

    def __init__(self, root):
        super().__init__("discriminant is a square in the base ring")
        self.root = root
