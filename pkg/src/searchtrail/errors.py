"""Service error hierarchy shared across modules.

Every error that can escape the model layer carries a stable machine code;
the HTTP layer maps codes to status codes one-to-one.
"""


class ServiceError(Exception):
    """Base class; `code` is the machine-readable error code."""

    code = "io_error"


class BadRequestError(ServiceError):
    code = "bad_request"


class NotFoundError(ServiceError):
    code = "not_found"


class ConflictError(ServiceError):
    code = "conflict"


class NotOngoingError(ServiceError):
    """Operation requires the topic to be the user's ongoing topic."""

    code = "not_ongoing"


class StorageError(ServiceError):
    code = "io_error"


class CorruptLogError(StorageError):
    """A non-trailing log record failed to parse; unrecoverable."""

    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: corrupt event record: {reason}")
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason
