"""Build script: compiles the simplex kernel as a C extension.

``stacklearn/_kernel.py`` is plain Python and is the single source of
truth.  At build time it is copied to ``_kernel_c.py`` and cythonized;
``stacklearn.kernel`` prefers the compiled module at import and falls
back to the interpreted one when the extension is unavailable.
"""

import shutil
from pathlib import Path

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    pkg = Path(__file__).parent / "src" / "stacklearn"
    shutil.copyfile(pkg / "_kernel.py", pkg / "_kernel_c.py")
    ext_modules = cythonize(
        [Extension("stacklearn._kernel_c", ["src/stacklearn/_kernel_c.py"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)
