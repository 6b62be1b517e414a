"""Build script: compiles the optional fast kernel when Cython is available.

Set SPGAME_NO_EXT=1 to skip the extension entirely; the package then runs on
the pure-Python kernel with identical results.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SPGAME_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/spgame/_fastcore.pyx"], language_level="3"
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
