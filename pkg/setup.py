import os

from setuptools import Extension, setup

# The compiled kernels are optional: set DIRICHLET_LAB_NO_EXT=1 to skip the
# Cython build entirely, in which case the package falls back to the pure
# NumPy kernels at import time.
ext_modules = []
if not os.environ.get("DIRICHLET_LAB_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "dirichlet_lab._kernels._ext",
                    ["src/dirichlet_lab/_kernels/_ext.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
