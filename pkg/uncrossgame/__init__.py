from .version import __version__

from .errors import *
from .rational_utils import *
from .log_utils import *
from .file_io_utils import *
from .time_utils import *

from .ground import *
from .functions import *
from .game import *
from .redstrategy import *
from .uncross import *
from .lp import *
