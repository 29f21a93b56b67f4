from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the numpy
# implementations in belnet._kernels_np when the extension is missing.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "belnet._kernels_cy",
                ["src/belnet/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
