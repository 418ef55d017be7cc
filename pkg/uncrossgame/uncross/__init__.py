from .uncross_dual import *
from .uncross_step import *
from .uncross_procedures import *
