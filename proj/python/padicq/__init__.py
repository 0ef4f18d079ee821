from ._padicq import *  # noqa: F401,F403
from ._padicq import __doc__  # noqa: F401
