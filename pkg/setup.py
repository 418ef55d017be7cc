import sys
from setuptools import find_packages, setup

install_requires = ['numpy>=1.17', 'networkx>=2.4']
extras_require = {'test': ['pytest>=6.0', 'hypothesis>=5.0']}

setup(
    name='uncrossgame',
    version='0.1.0',
    description='Uncrossing game for skew-supermodular functions and dual uncrossing',
    long_description='Uncrossing game for skew-supermodular functions and dual uncrossing',
    keywords='uncrossing, laminar family, skew-supermodular, cut-covering LP',
    packages=find_packages(exclude=['tests']),
    classifiers=[
        'Development Status :: 4 - Beta',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    url='',
    license='GPLv3',
    python_requires='>=3.8',
    install_requires=install_requires,
    extras_require=extras_require,
    entry_points={
        'console_scripts': ['uncrossgame = uncrossgame.cli.cli_main:main'],
    },
    zip_safe=False)
