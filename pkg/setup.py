"""Build script for the optional compiled kernel.

The extension is a plain Cython translation of circumseq._kernels_py and
uses only typed memoryviews, so no extra include directories are needed.
The package works without it; see circumseq._kernels for the fallback.
"""

from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("circumseq._speedups", ["src/circumseq/_speedups.pyx"])],
        language_level=3,
    )
)
