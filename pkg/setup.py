from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [Extension("hkcurves._kernel", ["src/hkcurves/_kernel.pyx"])],
        language_level=3,
    )
except ImportError:
    # pure-Python fallback kernel is selected at import when the extension is absent
    extensions = []

setup(ext_modules=extensions)
