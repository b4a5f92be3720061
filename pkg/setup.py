from setuptools import find_packages
from setuptools import setup

from dynqg import VERSION


setup(
    name='dynqg',
    packages=find_packages(exclude=(['test*', 'tmp*'])),
    version=VERSION,
    description=(
        'Exact symbolic construction and verification of dynamical '
        'quantum groups as (B, Gamma)-Hopf algebroids'
    ),
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    license='Apache License 2.0',
    keywords=[
        'quantum-groups',
        'hopf-algebroids',
        'computer-algebra',
        'rewriting',
    ],
    python_requires='>=3.6',
    install_requires=[
        'monotonic',
        'pyyaml>=5.1',
        'sympy>=1.7',
    ],
    entry_points={
        'console_scripts': [
            'dynqg = dynqg.main:main',
        ],
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: Apache Software License',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Environment :: Console',
        'Operating System :: OS Independent',
        'Development Status :: 4 - Beta',
    ],
)
