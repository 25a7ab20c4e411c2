"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can turn it into a JSON error object without string matching.
"""


class LagfibError(Exception):
    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class ParseError(LagfibError, ValueError):
    code = "parse_error"


class PreconditionError(LagfibError, ValueError):
    """Input parsed but violates a documented precondition."""
    code = "precondition"


class IrrationalInput(PreconditionError):
    code = "irrational_input"


class SingularInput(PreconditionError):
    code = "singular_input"


class EmptyOrAllZero(PreconditionError):
    code = "empty_or_all_zero"


class DimensionMismatch(PreconditionError):
    code = "dimension_mismatch"


class ShapeMismatch(PreconditionError):
    code = "shape_mismatch"


class NotPrimitive(PreconditionError):
    code = "not_primitive"


class NoUnitEigenvalue(PreconditionError):
    code = "no_unit_eigenvalue"


class NotFreeAction(PreconditionError):
    code = "not_free_action"


class UnsupportedPresentation(PreconditionError):
    code = "unsupported_presentation"


class ConstraintViolation(PreconditionError):
    code = "constraint_violation"

    def __init__(self, item, message):
        super().__init__(f"item {item}: {message}")
        self.item = item

    def to_json(self):
        out = super().to_json()
        out["item"] = self.item
        return out


class InvalidParameters(PreconditionError):
    code = "invalid_parameters"


class NonCompactBase(PreconditionError):
    code = "non_compact_base"


class TrivialAmbient(PreconditionError):
    code = "trivial_ambient"


class UnrealizableForm(PreconditionError):
    code = "unrealizable_form"


class SingularLattice(PreconditionError):
    code = "singular_lattice"


class UnrecognizedShape(PreconditionError):
    code = "unrecognized_shape"
