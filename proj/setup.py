"""CMake-driven build of the diqpq._core extension module."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DSKBUILD=ON",
                "-DDIQPQ_BUILD_TESTS=OFF",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--parallel"], check=True
        )
        # installs _core into <prefix>/diqpq/, i.e. next to __init__.py
        subprocess.run(
            [
                "cmake",
                "--install", str(build_dir),
                "--prefix", str(ext_path.parent.parent),
            ],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("diqpq._core")],
    cmdclass={"build_ext": CMakeBuild},
)
