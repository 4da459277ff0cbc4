"""Build script: compiles the optional RK4 extension when Cython is available.

The package is fully functional without the extension; the pure-Python
kernel in qbattery.kernels is selected automatically at import time.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qbattery.kernels._rk4",
                ["src/qbattery/kernels/_rk4.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
