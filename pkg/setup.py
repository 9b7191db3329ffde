"""Build shim: compile the scan kernels when Cython and a C toolchain exist.

The package works without the extension (a NumPy backend is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    """build_ext that degrades to the pure-Python install on any compile error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            warnings.warn(f"kernel extension not built ({exc}); "
                          "falling back to the NumPy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"kernel extension {ext.name} not built ({exc}); "
                          "falling back to the NumPy backend")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without the kernel extension")
        return []
    ext = Extension("psl2coset._kernels", ["src/psl2coset/_kernels.pyx"])
    return cythonize([ext], language_level="3")


setup(ext_modules=_extensions(), cmdclass={"build_ext": _OptionalBuildExt})
