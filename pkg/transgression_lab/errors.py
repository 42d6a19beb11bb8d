class LabException(ValueError):
    pass


class DimensionError(LabException):
    pass


class ValidationError(LabException):
    pass


class UsageError(LabException):
    pass


class FrameError(LabException):
    pass


class BoundaryError(LabException):
    pass


class DegreeError(LabException):
    pass


class ConfigError(LabException):

    def __init__(self, path, message):
        super(ConfigError, self).__init__("%s: %s" % (path, message))
        self.path = path
        self.message = message


class NumericalBreakdown(LabException):
    pass


class FlowBreakdownError(NumericalBreakdown):

    def __init__(self, message, t_star=None):
        if t_star is not None:
            message = "%s (t* = %.6g)" % (message, t_star)
        super(FlowBreakdownError, self).__init__(message)
        self.t_star = t_star


class TransversalityError(NumericalBreakdown):
    pass


class DegenerateCrossingError(NumericalBreakdown):
    pass


class BrokenTrajectoryError(NumericalBreakdown):
    pass


class IntegrationError(NumericalBreakdown):
    pass


class AmbiguousStratumWarning(UserWarning):
    pass


class ConvergenceWarning(UserWarning):
    pass


ODD_DIMENSION = DimensionError("odd dimension")
NOT_SQUARE = DimensionError("matrix is not square")
MISSING_SPLIT = UsageError("graded mode requires a grading split")
BROKEN_TRAJECTORY = BrokenTrajectoryError(
        "flowline meets the critical set before reaching the level")
