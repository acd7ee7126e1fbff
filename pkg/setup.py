import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LIEHEAT_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("lieheat._speedups", ["src/lieheat/_speedups.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
