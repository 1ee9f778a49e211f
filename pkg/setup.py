from setuptools import setup, find_packages
from codecs import open
from os import path

here    = path.abspath(path.dirname(__file__))
version = open("marin/_version.py").readlines()[-1].split()[-1].strip("\"'")

with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(

    name='marin-ineq',

    version=version,

    description='Matrix rearrangement inequalities: verification and counterexample search',
    long_description=long_description,
    long_description_content_type='text/markdown',

    license='GPL-3.0',

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10'
        ],

    keywords=['matrix-inequalities', 'rearrangement', 'positive-semidefinite',
              'spectral-norm', 'noncommutative-polynomials', 'counterexample-search'],

    packages=find_packages(exclude=['contrib', 'docs', 'tests']),

    package_data={'marin': ['schema/*.json']},

    python_requires='>=3.8',

    install_requires=['numpy>=1.19.5',
                      'pandas>=1.1.3',
                      'numba>=0.52.0',
                      'optuna>=2.10.0',
                      'psutil>=5.7.3'],

    extras_require={'test': ['pytest>=6.0',
                             'hypothesis>=6.0',
                             'jsonschema>=3.2']},

    entry_points={'console_scripts': ['marin=marin.cli:main']},

    zip_safe=False,

)
