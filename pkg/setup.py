"""Build hook for the optional compiled kernel.

The package works without the extension (a pure-Python kernel is selected
at import time); the extension only speeds up model checks and answer-set
enumeration on programs with at most 64 ground atoms.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    speedups = Extension(
        "xplain.kernel._speedups",
        sources=["src/xplain/kernel/_speedups.pyx"],
        optional=True,
    )
    ext_modules = cythonize([speedups], language_level="3")

setup(ext_modules=ext_modules)
