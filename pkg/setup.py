import os

from setuptools import Extension, setup

# CONPOP_NO_EXT=1 skips the compiled kernel; the package then runs on the
# pure-Python fallback.
ext_modules = []
if not os.environ.get("CONPOP_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("conpop._dp3", ["src/conpop/_dp3.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
