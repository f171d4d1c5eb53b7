"""Build hook for the compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes the distance/kernel routines faster.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "clinicalqa.accel._ckernels",
                sources=["src/clinicalqa/accel/_ckernels.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=extensions, include_dirs=[np.get_include()])
