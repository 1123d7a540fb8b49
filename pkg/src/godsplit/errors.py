"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class GodsplitError(Exception):
    exit_code = 3


class UsageError(GodsplitError):
    exit_code = 1


class ParseFailure(GodsplitError):
    exit_code = 2


class AlgorithmError(GodsplitError):
    exit_code = 3
