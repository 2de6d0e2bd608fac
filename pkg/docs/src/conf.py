# Configuration file for the Sphinx documentation builder.
#
# For the full list of options see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html
# -- Path setup --------------------------------------------------------------

import os
import sys

sys.path.insert(0, os.path.abspath("../../src"))


# -- Project information -----------------------------------------------------

project = "Disentangled Explainer"
copyright = "2026, Disentangled Explainer developers"
author = "Disentangled Explainer developers"

# The full version, including alpha/beta/rc tags.
version = "0.1.0"

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx_autodoc_typehints",
    "myst_parser",
]

source_suffix = [".rst", ".md"]

autodoc_mock_imports = [
    "msgpack",
    "msgpack_numpy",
    "ska_ser_logging",
    "tqdm",
]

exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = "alabaster"

html_context = {}


intersphinx_mapping = {
    "python": ("https://docs.python.org/3.10", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "pytest": ("https://docs.pytest.org/en/8.3.x/", None),
}
