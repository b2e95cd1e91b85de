"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CodegreeBoundError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class ParameterError(CodegreeBoundError, ValueError):
    """Invalid or infeasible parameters, or a violated precondition."""

    exit_code = 2


class ResourceError(CodegreeBoundError, RuntimeError):
    """A search ran out of its node/move budget before reaching an answer."""

    exit_code = 3


class ConstructionError(CodegreeBoundError, RuntimeError):
    """A construction produced an object that failed its verification gate.

    This signals a bug, never a legitimate outcome.
    """

    exit_code = 1
