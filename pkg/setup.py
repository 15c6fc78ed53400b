from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pg4q._fastkernels",
                ["src/pg4q/_fastkernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ]
    )
except ImportError:
    # pure-numpy fallback kernels are selected at import time
    ext_modules = []

setup(ext_modules=ext_modules)
