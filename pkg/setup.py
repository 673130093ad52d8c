from setuptools import setup, find_packages

#next time:
#python setup.py sdist bdist_wheel
#twine upload dist/*

version = open('twotime/VERSION', 'r').readline().strip()

long_desc = """
Two-time correlation functions of quantum observables, gamma-space
verification and a sequential measurement toy model.

[Documentation](docs/index.rst)
"""

setup(
    name='twotime',
    version=version,
    description='Two-time quantum correlations and gamma-space verification',
    long_description=long_desc,
    classifiers = [
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords='quantum,correlation,clifford,gamma matrices,measurement',
    install_requires = ['numpy >= 1.17', 'six >= 1.7.2'],
    license='BSD',
    packages=find_packages(),
    include_package_data=True,
    package_data={'twotime': ['VERSION']},
    entry_points={
        'console_scripts': ['twotime = twotime.cli:main'],
    },
)
