"""Build script: compiles the optional Monte-Carlo stepping kernel.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes large simulations several times faster.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    """Skip the extension (instead of failing the install) if no C toolchain."""

    def run(self):
        try:
            super().run()
        except (CCompilerError, ExecError, PlatformError, FileNotFoundError) as exc:
            print(f"warning: skipping compiled kernel ({exc}); "
                  "the pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError, FileNotFoundError) as exc:
            print(f"warning: could not compile {ext.name} ({exc}); "
                  "the pure-Python backend will be used")


extensions = [
    Extension(
        "mfcev._mc_kernel",
        ["src/mfcev/_mc_kernel.pyx"],
        # -ffp-contract=off keeps the kernel bit-identical to the numpy
        # fallback (no FMA contraction of the update expression).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    ),
]

setup(
    ext_modules=cythonize(extensions, language_level=3) if cythonize else [],
    cmdclass={"build_ext": OptionalBuildExt},
)
