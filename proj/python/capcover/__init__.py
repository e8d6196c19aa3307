from ._capcover import *  # noqa: F401,F403
from ._capcover import Error, ParseError, StructuralError, CapExceeded  # noqa: F401
