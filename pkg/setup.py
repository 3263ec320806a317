import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ESSENTIA_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("essentia._lattice", ["src/essentia/_lattice.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install with the pure-Python kernel only.
        ext_modules = []

setup(ext_modules=ext_modules)
