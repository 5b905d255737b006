"""Build hook for the optional compiled rhyme kernel.

The package works without the extension (a pure-Python twin is selected at
import time); set VERSEVAL_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("VERSEVAL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/verseval/rhyme/_kernel.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass  # no Cython available: ship pure Python only

setup(ext_modules=ext_modules)
