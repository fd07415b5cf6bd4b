"""Build script.

The collection kernel has two interchangeable implementations: a compiled
Cython extension (pgforge._ckernel) and a pure-Python module
(pgforge._pykernel).  The extension is strictly optional; if Cython or a C
compiler is unavailable the package installs without it and selects the
pure backend at import time.

Set PGFORGE_PURE=1 to skip the extension build entirely.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compilation failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: compiled kernel build failed (%s); "
            "falling back to the pure-Python kernel" % exc,
            file=sys.stderr,
        )


ext_modules = []
if os.environ.get("PGFORGE_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/pgforge/_ckernel.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        print(
            "warning: Cython not available; installing with the "
            "pure-Python kernel only",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
