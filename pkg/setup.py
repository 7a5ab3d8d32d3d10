"""Build script for the optional compiled stepping kernel.

The package is pure Python except for atmc/_kernel.pyx, a Cython twin of
atmc/_kernel_py.py. If Cython or a C compiler is unavailable the build
falls back to the pure-Python kernel, selected at import in atmc.kernels.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Try to build the extension; warn instead of failing the install."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # missing compiler, broken toolchain
            print(f"WARNING: compiled kernel not built ({exc}); "
                  "atmc will use the pure-Python kernel")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"WARNING: {ext.name} failed to compile ({exc}); "
                  "atmc will use the pure-Python kernel")


try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    # -ffp-contract=off blocks fused multiply-adds; -fno-builtin-sin/cos
    # blocks the sin+cos -> sincos rewrite (glibc sincos is not bit-equal to
    # separate sin/cos). Both keep the two backends bit-for-bit identical.
    extensions = cythonize(
        [Extension(
            "atmc._kernel",
            ["src/atmc/_kernel.pyx"],
            extra_compile_args=["-O3", "-ffp-contract=off",
                                "-fno-builtin-sin", "-fno-builtin-cos"],
        )],
        language_level=3,
    )
except ImportError:
    print("WARNING: Cython not found; atmc will use the pure-Python kernel")
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
