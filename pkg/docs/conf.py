import k3brauer


project = 'k3-brauer-lattices'
copyright = '2026, k3-brauer-lattices developers'
release = '.'.join(str(v) for v in k3brauer.version_info[:2])
version = k3brauer.version
needs_sphinx = '1.3'
extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx']

master_doc = 'index'
html_sidebars = {'**': ['about.html', 'navigation.html']}
html_theme_options = {
    'description': 'Lattices and Brauer classes of K3 surfaces',
}
intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'sympy': ('https://docs.sympy.org/latest/', None),
    'mpmath': ('https://mpmath.org/doc/current/', None),
}
