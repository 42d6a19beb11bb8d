# -*- coding: utf-8 -*-
#
# transgression_lab documentation build configuration file.

import sys, os

sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx',
              'sphinx.ext.viewcode', 'sphinx.ext.doctest']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'transgression_lab'
copyright = '2024, transgression-lab contributors'

release = __import__('transgression_lab').__version__
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'pyramid'
html_static_path = ['_static']
htmlhelp_basename = 'transgression_labdoc'

latex_documents = [
  ('index', 'transgression_lab.tex', 'transgression\\_lab Documentation',
   'transgression-lab contributors', 'manual'),
]

man_pages = [
    ('index', 'lab', 'transgression_lab Documentation',
     ['transgression-lab contributors'], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable', None),
                       'rdflib': ('https://rdflib.readthedocs.io/en/stable',
                                  None)}
