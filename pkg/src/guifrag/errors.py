"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class GuifragError(Exception):
    """Base class; ``code`` is a stable machine-readable identifier."""

    code = "error"

    def __init__(self, message: str = "", code: str | None = None):
        super().__init__(message or self.code)
        if code is not None:
            self.code = code


# corpus
class InvalidQuery(GuifragError):
    code = "invalid-query"


class ApiUnreachable(GuifragError):
    code = "api-unreachable"
    retryable = True


class RateLimited(GuifragError):
    code = "rate-limited"

    def __init__(self, message: str = "", retry_after: float | None = None):
        super().__init__(message)
        self.retry_after = retry_after


class MalformedResponse(GuifragError):
    code = "malformed-response"


class CloneFailed(GuifragError):
    code = "clone-failed"


class CacheDirUnwritable(GuifragError):
    code = "cache-dir-unwritable"


# git
class RepoUnreadable(GuifragError):
    code = "repo-unreadable"


class NoReleases(GuifragError):
    code = "no-releases"


class UnknownCommit(GuifragError):
    code = "unknown-commit"


# java
class JavaSyntaxError(GuifragError):
    code = "unbalanced-braces"


class UndecodableSource(GuifragError):
    code = "undecodable-source"


# metrics
class InconsistentInputs(GuifragError):
    code = "inconsistent-inputs"


class EmptySeries(GuifragError):
    code = "empty-series"


class UnknownRecordId(GuifragError):
    code = "unknown-record-id"


class InvalidCategory(GuifragError):
    code = "invalid-category"


class InsufficientRecords(GuifragError):
    code = "insufficient-records"


# cli
class ConfigInvalid(GuifragError):
    code = "config-invalid"


class OutputUnwritable(GuifragError):
    code = "output-unwritable"


class MissingInput(GuifragError):
    code = "missing-input"
