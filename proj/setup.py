"""Build the pybind11 extension by delegating to the CMake project."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_temp = Path(self.build_temp).resolve()
        build_temp.mkdir(parents=True, exist_ok=True)
        cfg = "Debug" if self.debug else "Release"
        source_dir = Path(__file__).resolve().parent
        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_temp),
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DKYFAN_PYTHON_OUTPUT_DIR={extdir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DKYFAN_BUILD_PYTHON=ON",
        ]
        subprocess.run(configure, check=True)
        build = [
            "cmake",
            "--build",
            str(build_temp),
            "--target",
            "_core",
            f"-j{os.cpu_count() or 2}",
        ]
        subprocess.run(build, check=True)


setup(
    ext_modules=[CMakeExtension("kyfan._core")],
    cmdclass={"build_ext": CMakeBuild},
)
