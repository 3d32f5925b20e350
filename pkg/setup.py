from setuptools import setup, Extension

# The compiled kernel is optional: if Cython (or a C compiler) is missing,
# the package installs anyway and falls back to the pure-Python engine.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("avmsim._speedups", ["src/avmsim/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
