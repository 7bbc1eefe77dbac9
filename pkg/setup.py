from setuptools import setup, find_packages

d = {}
exec(open("sdaetoolkit/version.py").read(), None, d)
version = d['version']
long_description = open("README.md").read()

pkg_name = "sdaetoolkit"

setup(
    name=pkg_name,
    version=version,
    description="Python toolkit for reachability, observability and Gramian-based reduction of switched "
                "differential-algebraic equations",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(),
    package_data={'sdaetoolkit': ['tests/data/*.json']},
    install_requires=[
        'numpy',
        'scipy',
        'pandas',
        'joblib',
        'tqdm'
    ],
    entry_points={
        'console_scripts': ['sdaetoolkit=sdaetoolkit.cli:main'],
    },
    classifiers=(
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
    )
)
