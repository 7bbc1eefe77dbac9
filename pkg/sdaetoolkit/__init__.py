from . import subspace
from . import pencil
from . import reform
from . import sim
from . import sets
from . import gramian
from . import validation

from .version import version as __version__
