"""Exception hierarchy.

Every error carries a ``kind`` string that the command-line interface
reports as ``error_kind``.
"""


class CatentError(Exception):
    """Base class for domain errors (invalid categories, triples, ...)."""

    kind = "CatentError"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message


def _make(name, doc):
    return type(name, (CatentError,), {"kind": name, "__doc__": doc})


# core-category
ShapeMismatch = _make("ShapeMismatch", "Matrix or vector dimensions disagree.")
MissingIdentity = _make("MissingIdentity", "Some object has an empty endomorphism set.")
CompositionViolation = _make(
    "CompositionViolation", "Arrows a->b and b->c exist but no arrow a->c does."
)
ArrowNotPreserved = _make("ArrowNotPreserved", "An object map sends an arrow to an empty hom-set.")
IndexOutOfRange = _make("IndexOutOfRange", "An object index lies outside the category.")
DomainMismatch = _make("DomainMismatch", "Functors are not composable.")
DuplicateLabel = _make("DuplicateLabel", "Object labels within a category must be unique.")

# magnitude-linalg
NotSquare = _make("NotSquare", "Operation needs a square matrix.")
SizeLimit = _make("SizeLimit", "Input exceeds the configured enumeration bound.")

# prob-triples
DiagonalZero = _make("DiagonalZero", "A kernel has a non-positive diagonal entry.")
IncidenceViolation = _make(
    "IncidenceViolation", "A kernel is nonzero (or negative) where it must vanish."
)
NotAProbability = _make("NotAProbability", "Weights do not sum to one, or are negative.")
CompositionMismatch = _make("CompositionMismatch", "Target of one morphism is not the source of the next.")
NotAMorphism = _make("NotAMorphism", "Target triple is not the pushforward of the source.")
LambdaOutOfRange = _make("LambdaOutOfRange", "Mixing weight outside [0, 1].")
LengthMismatch = _make("LengthMismatch", "Number of mixing weights differs from number of triples.")
NotTransitionKernel = _make("NotTransitionKernel", "Some kernel column does not sum to one.")

# entropy
SignedInput = _make("SignedInput", "Signed probability passed to an unsigned entropy.")
LogOfZero = _make("LogOfZero", "Logarithm of a zero inner sum with nonzero weight.")
NoMagnitude = _make("NoMagnitude", "Matrix lacks a weighting or a coweighting.")
NoNonnegativeWeighting = _make("NoNonnegativeWeighting", "Matrix has no nonnegative weighting.")

# maxent
NoFeasibleSubset = _make("NoFeasibleSubset", "No principal submatrix has a nonnegative weighting.")

# io
FormatError = _make("FormatError", "Malformed input file.")


class CompositionWarning(UserWarning):
    """Composition closure failed but strict validation was disabled."""
