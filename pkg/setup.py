"""Build script for the optional compiled transform kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile only costs speed, never
correctness.  Build errors are therefore downgraded to warnings.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
            warnings.warn(f"skipping compiled kernel, falling back to numpy: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"skipping {ext.name}, falling back to numpy: {exc}")


def make_extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover
        return []
    ext = Extension(
        "lfwp._vc",
        ["src/lfwp/_vc.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=make_extensions(), cmdclass={"build_ext": OptionalBuildExt})
