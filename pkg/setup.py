"""Build script: compiles the optional enumeration kernel.

The compiled extension is a pure accelerator.  If Cython or a C compiler
is missing the build falls back to the pure-Python engine and the package
stays fully functional (slower on large enumerations).
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Swallow compiler failures so the extension stays optional."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            sys.stderr.write(
                f"warning: compiled kernel skipped ({exc}); "
                "falling back to the pure-Python engine\n"
            )

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            sys.stderr.write(
                f"warning: could not compile {ext.name} ({exc}); "
                "falling back to the pure-Python engine\n"
            )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - depends on toolchain
        sys.stderr.write("warning: Cython not found; compiled kernel skipped\n")
        return []
    return cythonize(
        [
            Extension(
                "heightzeta._fastenum",
                ["src/heightzeta/_fastenum.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
