"""Build the optional compiled search kernel.

The package works without it; ``sumrank_stc.decoder`` falls back to the
pure-Python kernel when the extension is missing.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SUMRANK_STC_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "sumrank_stc._search_ext",
                    ["src/sumrank_stc/_search_ext.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    # bit-identical float results with the Python kernel
                    extra_compile_args=["-O3", "-ffp-contract=off", "-fno-fast-math"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
