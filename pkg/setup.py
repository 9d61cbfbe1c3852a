"""Build script: compiles the optional Gauss-sum kernel when Cython is present.

The package works without the extension (a numpy fallback is selected at
import time), so any build failure here downgrades gracefully.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SIGMOD8_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("sigmod8._gausskernel", ["src/sigmod8/_gausskernel.pyx"])],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        print(f"sigmod8: building without the compiled kernel ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
