# Copyright 2024 torsionkit developers

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Version information for torsionkit, kept in one place so that setup.py can
read it without importing the package.
"""


def _safe_int(string):
    """ Convert a version component to int, leaving tags like 'dev0' alone. """
    try:
        return int(string)
    except ValueError:
        return string


__version__ = "0.3.0"
VERSION = tuple(_safe_int(x) for x in __version__.split("."))
