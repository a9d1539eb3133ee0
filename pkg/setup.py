import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernel if possible; fall back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    def _warn(self, exc):
        print(f"warning: compiled kernel not built ({exc}); "
              "the pure-Python kernel will be used", file=sys.stderr)


def extensions():
    if os.environ.get("WDFA_NO_EXTENSION"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "wdfa._ckernel",
        ["src/wdfa/_ckernel.pyx"],
        # identical float results to the Python kernel need plain IEEE ops
        extra_compile_args=["-O3", "-ffp-contract=off", "-fno-fast-math"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
