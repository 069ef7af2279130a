"""Errors raised while building or validating protocol models."""


class InvalidRule(RuntimeError):
    """Simple RuntimeError for rules with contradictory premises or states."""

    def __init__(self, rule_text: str, reason: str):
        """Call super with a formatted message.

        Args:
            rule_text (str): the rule, as text
            reason (str): what cannot be unified
        """
        super().__init__(f"Invalid rule {rule_text}: {reason}")
        self.reason = reason


class ModelError(RuntimeError):
    """Simple RuntimeError for declarations and rules that do not fit together."""

    def __init__(self, msg: str, rule_name: str = ""):
        """Call super with a formatted message.

        Args:
            msg (str): the problem
            rule_name (str): the offending rule, if any
        """
        super().__init__(f"In rule '{rule_name}': {msg}" if rule_name else msg)
        self.rule_name = rule_name
