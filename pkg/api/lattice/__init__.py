from ._complement import *
from ._image import *
from ._irreducibles import *
from ._moore import *
from ._subdomains import *
