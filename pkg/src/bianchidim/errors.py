"""Exception hierarchy shared across the package."""


class BianchiDimError(Exception):
    pass


class FormulaNonIntegral(BianchiDimError, ArithmeticError):
    """An exact dimension formula produced a non-integer rational."""


class FormulaNegative(BianchiDimError, ArithmeticError):
    """An exact dimension formula produced a negative integer."""


class PreconditionViolated(BianchiDimError, ValueError):
    """A theorem hypothesis does not hold for the given input.

    ``hypothesis`` names the failed condition so callers (and the CLI) can
    report it verbatim.
    """

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)


class MissingDPart(BianchiDimError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MissingScConstants(BianchiDimError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MalformedHnf(BianchiDimError, ValueError):
    pass


class ParseError(BianchiDimError, ValueError):
    def __init__(self, row, message):
        self.row = row
        super().__init__(f"row {row}: {message}")


class DuplicateKey(BianchiDimError, ValueError):
    pass
