from cavity_swap.models.enums import *
from cavity_swap.models.params import *
from cavity_swap.models.records import *
from cavity_swap.models.config import *
