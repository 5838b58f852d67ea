"""Exception types raised by the analysis engine."""


class NyquistError(Exception):
    """Base class for every error raised by this package."""


class ParseError(NyquistError, ValueError):
    """Malformed transfer-function expression.

    ``position`` is the 0-based character offset where parsing stopped.
    """

    def __init__(self, message, text="", position=0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(self._render())

    def _render(self):
        if not self.text:
            return f"{self.message} (at position {self.position})"
        caret = " " * self.position + "^"
        return f"{self.message} (at position {self.position})\n  {self.text}\n  {caret}"


class ZeroNumerator(NyquistError, ValueError):
    pass


class ZeroDenominator(NyquistError, ZeroDivisionError):
    pass


class ZeroConstantDenominator(NyquistError, ZeroDivisionError):
    """Power-series division needs a denominator with a nonzero constant term."""


class OddIndexRequired(NyquistError, ValueError):
    pass


class HypothesisViolated(NyquistError, ValueError):
    """A closed form was requested while one of its lower odd coefficients is nonzero."""


class DegenerateOnAxis(NyquistError):
    """The frequency response is real for every frequency, so every point is a crossing."""
