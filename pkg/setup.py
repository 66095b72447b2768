#!/usr/bin/env python
#

import setuptools

import k3brauer


setuptools.setup(
    name='k3-brauer-lattices',
    version=k3brauer.version,
    description='Exact lattice and Brauer class computations for K3 surfaces',
    long_description='\n'+open('README.rst').read(),
    install_requires=['sympy>=1.12', 'mpmath>=1.2', 'numpy>=1.20'],
    packages=['k3brauer'],
    entry_points={'console_scripts': ['k3brauer=k3brauer.cli:main']},
    python_requires='>=3.8',
    classifiers=['Intended Audience :: Science/Research',
                 'License :: OSI Approved :: BSD License',
                 'Operating System :: OS Independent',
                 'Programming Language :: Python',
                 'Programming Language :: Python :: 3',
                 'Programming Language :: Python :: 3.8',
                 'Programming Language :: Python :: 3.9',
                 'Programming Language :: Python :: 3.10',
                 'Programming Language :: Python :: 3.11',
                 'Development Status :: 3 - Alpha',
                 'Topic :: Scientific/Engineering :: Mathematics'],
)
