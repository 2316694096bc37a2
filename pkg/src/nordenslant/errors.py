"""Exception hierarchy.

Everything a user can trigger with bad input derives from ``ValidationError``;
the CLI maps those to exit code 2.
"""


class NordenSlantError(Exception):
    pass


class ValidationError(NordenSlantError, ValueError):
    pass


class DegenerateFrame(ValidationError):
    pass


class NotAStructure(ValidationError):
    pass


class ExprSyntaxError(ValidationError):
    """Malformed expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class UnknownName(ValidationError):
    def __init__(self, name, offset=None):
        where = "" if offset is None else f" at byte offset {offset}"
        super().__init__(f"unknown name {name!r}{where}")
        self.name = name
        self.offset = offset


class DomainError(ValidationError):
    pass


class OutOfDomain(ValidationError):
    pass


class AllSamplesDegenerate(ValidationError):
    pass


class AllSamplesLightLike(ValidationError):
    pass


class ToleranceConflict(ValidationError):
    pass


class UnknownParameter(ValidationError):
    pass
