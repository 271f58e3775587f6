from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("serreweights._ckernels", ["src/serreweights/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python fallback is selected at import time
    pass

setup(ext_modules=ext_modules)
