import os

from setuptools import setup

ext_modules = []
if os.environ.get("STONED_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("stoned_billiards._ckernels",
                       ["src/stoned_billiards/_ckernels.pyx"],
                       include_dirs=[np.get_include()])],
            compiler_directives={"language_level": 3, "boundscheck": False,
                                 "wraparound": False, "cdivision": True},
        )
    except ImportError:
        # no cython/numpy at build time: the pure-python kernels are used
        ext_modules = []

setup(ext_modules=ext_modules)
