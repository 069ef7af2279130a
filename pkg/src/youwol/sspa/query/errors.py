"""Errors raised while answering queries."""


class NotAccessible(RuntimeError):
    """Simple RuntimeError for a state no access pattern covers."""

    def __init__(self, state: str):
        """Call super with a formatted message.

        Args:
            state (str): the state, as text
        """
        super().__init__(f"State {state} is not accessible to the adversary")


class MalformedProvenance(RuntimeError):
    """Simple RuntimeError for provenance records that do not fit together: a bug, never a user error."""

    def __init__(self, rule_text: str, reason: str):
        """Call super with a formatted message.

        Args:
            rule_text (str): the rule being reconstructed
            reason (str): what does not fit
        """
        super().__init__(f"Cannot reconstruct a derivation of {rule_text}: {reason}")
        self.reason = reason
