from enum import Enum


__all__ = ['ErrorCode', 'UncrossError', 'InvalidBipartition', 'GroundMismatch',
           'NotCrossing', 'InvalidValue', 'NotSkewSupermodular', 'TooLarge',
           'InvalidMove', 'NoValidPair', 'RedLoses', 'StrategyError',
           'InternalError', 'TrivialX', 'NotInSupport', 'NonIntegerWeights',
           'Unbounded', 'NothingToImprove', 'InvalidConfig',
           'InstanceParseError', 'GenerationFailed']


class ErrorCode(Enum):
    INVALID_BIPARTITION = (-100, 'subset must be a nonempty proper subset of the ground set')
    GROUND_MISMATCH = (-101, 'bipartitions live on different ground sets')
    NOT_CROSSING = (-102, 'the pair is not crossing')
    INVALID_VALUE = (-103, 'function values must be nonnegative rationals')
    NOT_SKEW_SUPERMODULAR = (-104, 'function is not skew-supermodular')
    TOO_LARGE = (-105, 'instance exceeds the enumeration guard')
    INVALID_MOVE = (-200, 'invalid Red move')
    NO_VALID_PAIR = (-201, 'no corner pair satisfies the uncrossing inequality')
    RED_LOSES = (-202, 'Red did not reach a laminar family within the cap')
    STRATEGY_ERROR = (-203, 'strategy aborted')
    INTERNAL_ERROR = (-204, 'inconsistent internal state')
    TRIVIAL_X = (-205, 'inserted member crosses no member of the laminar family')
    NOT_IN_SUPPORT = (-300, 'bipartition is not in the support of the dual solution')
    NON_INTEGER_WEIGHTS = (-301, 'dual weights must be integers')
    UNBOUNDED = (-400, 'dual LP is unbounded')
    NOTHING_TO_IMPROVE = (-401, 'dual solution is already optimal')
    INVALID_CONFIG = (-402, 'perturbation config violates its invariant')
    INSTANCE_PARSE_ERROR = (-500, 'malformed instance file')
    GENERATION_FAILED = (-501, 'instance generation failed verification')

    @property
    def code(self):
        return self.value[0]

    @property
    def message(self):
        return self.value[1]


class UncrossError(Exception):
    error_code = ErrorCode.INTERNAL_ERROR

    def __init__(self, extra_str: str = None, error_code: ErrorCode = None):
        if error_code is not None:
            self.error_code = error_code
        self.name = self.error_code.name
        self.code = self.error_code.code
        if extra_str is None:
            self.message = self.error_code.message
        else:
            self.message = f'{self.error_code.message}: {extra_str}'
        Exception.__init__(self, self.message)

    def __repr__(self):
        return f'[{self.__class__.__name__} {self.code}] {self.message}'

    __str__ = __repr__


class InvalidBipartition(UncrossError):
    error_code = ErrorCode.INVALID_BIPARTITION


class GroundMismatch(UncrossError):
    error_code = ErrorCode.GROUND_MISMATCH


class NotCrossing(UncrossError):
    error_code = ErrorCode.NOT_CROSSING


class InvalidValue(UncrossError):
    error_code = ErrorCode.INVALID_VALUE


class NotSkewSupermodular(UncrossError):
    """Carries the `Violation` certifying the failure."""
    error_code = ErrorCode.NOT_SKEW_SUPERMODULAR

    def __init__(self, violation, extra_str: str = None):
        self.violation = violation
        super().__init__(extra_str if extra_str is not None else str(violation))


class TooLarge(UncrossError):
    error_code = ErrorCode.TOO_LARGE


class InvalidMove(UncrossError):
    error_code = ErrorCode.INVALID_MOVE


class NoValidPair(UncrossError):
    error_code = ErrorCode.NO_VALID_PAIR


class _TraceError(UncrossError):
    def __init__(self, extra_str: str = None, trace=()):
        self.trace = tuple(trace)
        super().__init__(extra_str)


class RedLoses(_TraceError):
    error_code = ErrorCode.RED_LOSES


class StrategyError(_TraceError):
    error_code = ErrorCode.STRATEGY_ERROR


class InternalError(_TraceError):
    error_code = ErrorCode.INTERNAL_ERROR


class TrivialX(UncrossError):
    error_code = ErrorCode.TRIVIAL_X


class NotInSupport(UncrossError):
    error_code = ErrorCode.NOT_IN_SUPPORT


class NonIntegerWeights(UncrossError):
    error_code = ErrorCode.NON_INTEGER_WEIGHTS


class Unbounded(UncrossError):
    error_code = ErrorCode.UNBOUNDED


class NothingToImprove(UncrossError):
    error_code = ErrorCode.NOTHING_TO_IMPROVE


class InvalidConfig(UncrossError):
    error_code = ErrorCode.INVALID_CONFIG


class InstanceParseError(UncrossError):
    error_code = ErrorCode.INSTANCE_PARSE_ERROR


class GenerationFailed(UncrossError):
    error_code = ErrorCode.GENERATION_FAILED
