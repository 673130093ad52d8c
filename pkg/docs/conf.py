# -*- coding: utf-8 -*-
#
# twotime documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import os

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.coverage', 'sphinx.ext.mathjax']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'twotime'
copyright = u'2026, the twotime developers'

__twotime_version_path__ = os.path.realpath(__file__ + '/../../twotime/VERSION')
# The short X.Y version.
version = open(__twotime_version_path__, 'r').readline().strip()
# The full version, including alpha/beta/rc tags.
release = version

exclude_patterns = ['_build']

pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'

html_static_path = ['_static']

htmlhelp_basename = 'twotimedoc'

# -- Options for LaTeX output --------------------------------------------------

latex_elements = {
}

latex_documents = [
    ('index', 'twotime.tex', u'twotime Documentation', u'the twotime developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'twotime', u'twotime Documentation',
     [u'the twotime developers'], 1)
]
