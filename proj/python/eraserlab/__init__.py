from ._eraserlab import *  # noqa: F401,F403
from ._eraserlab import __doc__  # noqa: F401
