from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("logicgames.fastcore._speed",
                   ["src/logicgames/fastcore/_speed.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure fallback is selected at import time when the extension is absent
    ext_modules = []

setup(ext_modules=ext_modules)
