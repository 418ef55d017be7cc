from .lp_instance import *
from .lp_simplex import *
from .lp_perturbation import *
