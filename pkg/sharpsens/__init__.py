from . import model
from . import dist
from . import shift
from . import functional
from . import bounds
from . import estimate
from . import synth

from . import result
from . import stats
from . import visualize


from ._version import get_versions
__version__ = get_versions()['version']
del get_versions
