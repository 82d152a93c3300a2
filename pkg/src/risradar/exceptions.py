"""Exception types raised by risradar."""


class ConfigurationError(ValueError):
    """Scenario or configuration input is inconsistent or degenerate."""


class UnsupportedError(ValueError):
    """Requested regime, case or model combination has no defined treatment.

    Raised for the intermediate path-difference zone between resolvable and
    unresolvable echoes, for phase alignment in an indeterminate spacing
    regime, and for closed-form detection probabilities that do not exist
    (e.g. two-observation gamma fluctuation).
    """
