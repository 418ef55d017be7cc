from .game_engine import *
from .game_blue import *
from .game_search import *
