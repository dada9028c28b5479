# app/commands/__init__.py

# import each command *module*, not just its render function
from . import dual
from . import koszul_check
from . import betti
from . import resolve
from . import verify
