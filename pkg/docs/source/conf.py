import sys
import os


# on_rtd is whether we are on readthedocs.org
on_rtd = os.environ.get('READTHEDOCS', None) == 'True'

if not on_rtd:
    # Add the sharpsens root so we can grab the version
    sys.path.insert(0, os.path.abspath('../../'))

import sharpsens

mathjax_path = ('https://cdn.mathjax.org/mathjax/latest/MathJax.js?'
                'config=TeX-AMS-MML_HTMLorMML')

needs_sphinx = '1.3'

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode',
              'sphinx.ext.autosummary',
              'sphinx.ext.napoleon']

templates_path = ['_templates']
html_static_path = ['_static']

napoleon_include_special_with_doc = False
napoleon_numpy_docstring = True
napoleon_use_rtype = False
napoleon_use_ivar = False
napoleon_use_param = True

master_doc = 'index'

# Sort attributes by type (functions separate from properties)
autodoc_member_order = 'groupwise'

project = u'SharpSens'
authors = u'The SharpSens Development Team'
copyright = u'2026, ' + authors

version = sharpsens.__version__
release = sharpsens.__version__

exclude_patterns = ['_build', '**/test/**']

if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme

    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

htmlhelp_basename = 'SharpSensdoc'

latex_documents = [
    ('index', 'sharpsens.tex', u'SharpSens Documentation', authors,
     'manual'),
]
