"""Build script: compiles the optional classification kernel.

The package is pure Python plus one accelerator extension
(starkit._kernels._fast). The extension is skipped when Cython is missing
or STARKIT_NO_EXT is set; the package then falls back to the pure-Python
twin at import time.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("STARKIT_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "starkit._kernels._fast",
        sources=["src/starkit/_kernels/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(ext, compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
