"""Exception hierarchy shared by every module."""


class EssDimError(Exception):
    """Base class for library errors."""


class NotAGroup(EssDimError):
    pass


class NotAPGroup(EssDimError):
    pass


class OrderCapExceeded(EssDimError):
    pass


class NotNormal(EssDimError):
    pass


class NotAbelian(EssDimError):
    pass


class NotClassTwo(EssDimError):
    pass


class MixedParents(EssDimError):
    pass


class FlagBasisIncomplete(EssDimError):
    """The associated characters failed to span a flag step; indicates a bug."""


class IsotropicConstructionError(EssDimError):
    pass


class SpecError(EssDimError):
    """Group-spec syntax or semantic error, located by byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
