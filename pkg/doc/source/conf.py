# -*- coding: utf-8 -*-
#
# torsionkit documentation build configuration file.
#
# Only the settings that differ from the Sphinx defaults are listed.

import os
import sys

# The version is read from torsionkit/version.py without importing the
# package, so gmpy2 does not need to be installed to build the docs.
sys.path.insert(0, os.path.abspath("../../torsionkit"))
from version import __version__ as VERSION

sys.path.insert(0, os.path.abspath("../.."))

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "torsionkit"
copyright = "2024, torsionkit developers"
version = VERSION
release = VERSION

exclude_patterns = []
pygments_style = "sphinx"

autodoc_default_options = {"members": True}
autodoc_mock_imports = ["gmpy2", "fabric", "texttable"]

# -- Options for HTML output ----------------------------------------------

on_rtd = os.environ.get("READTHEDOCS", None) == "True"

if not on_rtd:
    import sphinx_rtd_theme

    html_theme = "sphinx_rtd_theme"
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

htmlhelp_basename = "torsionkit" + release.replace(".", "_")

man_pages = [("index", "tkit", "torsionkit Documentation", ["torsionkit developers"], 1)]
