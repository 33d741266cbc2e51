"""Chain recurrence analysis of maps on box grids.

Thin re-export of the compiled extension.
"""

from _chainrec import *  # noqa: F401,F403
from _chainrec import __doc__  # noqa: F401
