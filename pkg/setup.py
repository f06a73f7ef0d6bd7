import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "parprivacy._dpcore",
                ["src/parprivacy/_dpcore.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython available: install the pure-Python package; the kernel
    # dispatcher falls back to parprivacy._dppy at import time.
    extensions = []

setup(ext_modules=extensions)
