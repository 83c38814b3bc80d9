"""Exception hierarchy shared by all modules.

Two failure families matter to callers: bad input (malformed files,
out-of-range indices, unknown labels, thresholds outside their range) and
deliberate size guards on exponential-cost operations.  The CLI maps the
former to exit code 2 and the latter to exit code 3.
"""


class InputError(ValueError):
    """Raised for malformed or out-of-contract input."""


class SizeGuardError(RuntimeError):
    """Raised when an input exceeds a documented size cap for exact computation."""
