from setuptools import setup, Extension, find_packages

try:
    from Cython.Build import cythonize
except ImportError:  # the pure Python sign kernel is used instead
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                name="GRASSMANN.Kernel.sign_cy",
                sources=["GRASSMANN/Kernel/sign_cy.pyx"],
                language="c",
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "nonecheck": False,
            "cdivision": True,
        },
    )

setup(
    name="SuperCtrl",
    version="0.1.0",
    packages=find_packages(include=["COMMON", "GRASSMANN", "GRASSMANN.*", "SUPERMAT", "LSA", "CONTROL", "CATALOG", "logger"]),
    py_modules=["app"],
    ext_modules=ext_modules,
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=["sympy>=1.12", "numpy>=1.22", "scipy>=1.8"],
    extras_require={"test": ["pytest>=7"], "kernel": ["Cython>=0.29"]},
    entry_points={"console_scripts": ["superctrl=app:main"]},
)
