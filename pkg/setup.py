"""Build script: compiles the optional enumeration speedup extension.

Set QGRAPH_NO_EXT=1 to skip the extension; the package then runs on the
pure-Python kernels selected automatically at import.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QGRAPH_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qgraph._speedups", ["src/qgraph/_speedups.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
