"""Build script for the optional compiled kernels.

The package is fully functional as pure Python; this only adds the
accelerated extension.  When Cython or a C compiler is unavailable the
extension is skipped with a warning instead of failing the install.
Build it in place with:  python setup.py build_ext --inplace
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        print("rulespace: Cython not found, skipping compiled kernels", file=sys.stderr)
        return []
    return cythonize(
        [
            Extension(
                "rulespace._kernels",
                sources=["src/rulespace/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        quiet=True,
    )


class OptionalBuildExt(build_ext):
    """Compile if possible; fall back to the pure-Python kernels otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"rulespace: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"rulespace: skipping {ext.name} ({exc})", file=sys.stderr)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
