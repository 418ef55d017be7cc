from .ground_bipartition import *
from .ground_family import *
from .ground_atoms import *
