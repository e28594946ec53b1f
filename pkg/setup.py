import platform

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off keeps the compiled kernels bitwise comparable with the
# pure-Python/NumPy reference paths (no FMA contraction of a*b+c).
if platform.system() == "Windows":
    compile_args = ["/O2", "/openmp", "/fp:precise"]
    link_args = []
else:
    compile_args = [
        "-O3",
        "-march=native",
        "-funroll-loops",
        "-ffp-contract=off",
        "-fopenmp",
    ]
    link_args = ["-fopenmp"]

extensions = [
    Extension(
        "nbodybench.kernels._accel_cy",
        ["src/nbodybench/kernels/_accel_cy.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=compile_args,
        extra_link_args=link_args,
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
