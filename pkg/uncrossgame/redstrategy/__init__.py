from .red_form_a import *
from .red_form_b import *
from .red_paper import *
from .red_naive import *
