# Copyright 2026 The Unsharp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds the compiled extension through the project's CMake tree.

Only the extension target is configured; the CLI and C++ test suites stay
out of wheel builds.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])
        self.source_dir = str(Path(__file__).parent.resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        config = "Debug" if self.debug else "Release"
        subprocess.run(
            [
                "cmake",
                "-S", ext.source_dir,
                "-B", str(build_dir),
                f"-DCMAKE_BUILD_TYPE={config}",
                f"-DPython3_EXECUTABLE={sys.executable}",
                "-DUNSHARP_BUILD_CLI=OFF",
                "-DUNSHARP_BUILD_TESTS=OFF",
                "-DUNSHARP_BUILD_PYTHON=ON",
            ],
            check=True,
        )
        subprocess.run(
            [
                "cmake",
                "--build", str(build_dir),
                "--target", "unsharp_python",
                "-j", str(os.cpu_count() or 2),
            ],
            check=True,
        )
        built = sorted((build_dir / "python" / "unsharp").glob("_core.*"))
        if not built:
            raise RuntimeError(f"compiled module missing under {build_dir}")
        out_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        out_path.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built[0]), str(out_path))


setup(
    ext_modules=[CMakeExtension("unsharp._core")],
    cmdclass={"build_ext": CMakeBuild},
)
