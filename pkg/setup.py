import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are an optimization, not a requirement: the package
# falls back to the NumPy implementation when the extension is absent.
# Set QSKEW_NO_EXT=1 to skip building it.
ext_modules = []
if cythonize is not None and os.environ.get("QSKEW_NO_EXT") != "1":
    ext_modules = cythonize(
        [
            Extension(
                "qskew._kernels._core",
                ["src/qskew/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
