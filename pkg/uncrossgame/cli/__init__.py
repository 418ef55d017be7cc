from .cli_instance import *
from .cli_commands import *
