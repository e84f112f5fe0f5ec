"""Age-structured SEIR transmission model toolkit."""

from ._tbage import *  # noqa: F401,F403
from ._tbage import __doc__  # noqa: F401

__version__ = "0.1.0"
