from .functions_oracle import *
from .functions_verify import *
