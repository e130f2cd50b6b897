from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("qflag._poly_cy", ["src/qflag/_poly_cy.pyx"])],
        language_level="3",
    )
except ImportError:
    # pure-Python fallback is selected at import when the extension is absent
    extensions = []

setup(ext_modules=extensions)
