from ._checks import *
from ._random import *
from ._report import *
from ._suites import *
from ._trials import *
from ._witness import *
