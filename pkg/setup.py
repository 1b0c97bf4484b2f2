"""Build the optional Cython kernels for the integer normal forms.

The extension is optional: if Cython or a C compiler is unavailable the
package installs without it and the pure-Python kernels are used.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HURWITZPIC_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "hurwitzpic.abelian._kernels",
                    ["src/hurwitzpic/abelian/_kernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
