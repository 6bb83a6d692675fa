from setuptools import Extension, setup

ext_modules = [
    Extension(
        "rank3kit._ck",
        sources=["src/rank3kit/_ck.pyx"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

if __name__ == "__main__":
    import numpy as np
    from Cython.Build import cythonize

    setup(
        ext_modules=cythonize(ext_modules, language_level="3"),
        include_dirs=[np.get_include()],
    )
