"""Errors raised by the saturation engine."""

# application terms
from youwol.sspa.terms import NoUnifier

NotUnifiable = NoUnifier


class SideConditionViolated(RuntimeError):
    """Simple RuntimeError for a composition or transformation attempted outside its side conditions."""

    def __init__(self, operation: str, condition: str):
        """Call super with a formatted message.

        Args:
            operation (str): 'compose' or 'transform'
            condition (str): the violated condition
        """
        super().__init__(f"{operation}: {condition}")
        self.condition = condition


class LimitExceeded(RuntimeError):
    """Simple RuntimeError for a run stopped by one of its limits."""

    def __init__(self, limit: str, value: float):
        """Call super with a formatted message.

        Args:
            limit (str): 'rules', 'depth' or 'partition'
            value (float): the configured limit
        """
        super().__init__(f"Limit '{limit}' exceeded ({value})")
        self.limit = limit
        self.value = value


class SaturationTimeout(RuntimeError):
    """Simple RuntimeError for a run stopped by its timeout."""

    def __init__(self, timeout: float):
        """Call super with a formatted message.

        Args:
            timeout (float): the timeout, in seconds
        """
        super().__init__(f"Saturation did not reach a fixpoint within {timeout}s")
        self.timeout = timeout
