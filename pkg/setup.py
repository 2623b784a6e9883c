"""Build script: compiles the optional term-arithmetic speedup extension.

The package is fully functional without the extension (a pure-Python twin of
the kernel is selected at import time).  Set CAK_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("CAK_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("cak._kernel._speedups", ["src/cak/_kernel/_speedups.pyx"])
    return cythonize([ext], compiler_directives={"language_level": 3})


setup(ext_modules=extensions())
