import os

from setuptools import setup

ext_modules = []
if os.environ.get("FUJITA_LAB_NO_EXT", "") == "":
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; installing the pure-Python kernels only")
    else:
        ext_modules = cythonize(
            ["src/fujita_lab/_kernels.pyx"],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
