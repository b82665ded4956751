#!/usr/bin/env python
# -*- coding: utf-8 -*-
# conf.py

# Copyright (c) 2024, the voicemap developers
#
# This file is part of the voicemap package.
#
# voicemap is free software: you can redistribute it and/or modify
# it under the terms of the MIT licence.
#
# voicemap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# MIT License for more details.
#
# You should have received a copy of the license
# along with voicemap. If not, see <https://opensource.org/licenses/MIT>

import sys
import os

import mock
# try to import the modules of the package and mock everything that is not found
while True:
    try:
        # here are the modules that should be imported for the documentation
        import voicemap
        import voicemap.signal_io
        import voicemap.cycles
        import voicemap.frame_metrics
        import voicemap.voice_map
        import voicemap.statistic
    # if an import error occurs
    except ImportError as err:
        # get the module name from the error message
        name = str(err).split("'")[1]
        print("Mock:", name)
        # and mock it
        sys.modules.update((mod_name, mock.MagicMock()) for mod_name in [name])
        # then try again to import it
        continue
    else:
        break

sys.path.insert(0, os.path.abspath(os.path.join("voicemap")))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

autosummary_generate = True

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

# General information about the project.
project = u'voicemap'
copyright = u'2024, the voicemap developers'
author = u'the voicemap developers'

# The short X.Y version.
version = '1.0'
# The full version, including alpha/beta/rc tags.
release = '1.0.0'

language = None

exclude_patterns = ['_build']

pygments_style = 'sphinx'

todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

import sphinx_rtd_theme

html_theme = "sphinx_rtd_theme"

html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

html_static_path = ['_static']

htmlhelp_basename = 'voicemapdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  (master_doc, 'voicemap.tex', u'voicemap Documentation',
   u'the voicemap developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'voicemap', u'voicemap Documentation',
     [author], 1)
]
