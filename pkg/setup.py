from setuptools import setup, find_packages

setup_requires = []

install_requires = [
    'numpy>=1.21',
    'scipy>=1.7',
    'pandas>=1.5',
    'pyyaml>=5.3.1',
    'tqdm>=4.55.0',
    'loguru>=0.5.3',
    'scikit-learn>=1.0',
    'joblib>=1.1',
]

tests_require = [
    'pytest>=7.0',
]

classifiers = [
    "Programming Language :: Python :: 3",
    "License :: OSI Approved :: MIT License",
    "Topic :: Scientific/Engineering :: Artificial Intelligence",
    "Topic :: Scientific/Engineering :: Information Analysis"
]

with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name='srslab',
    version='0.1.0',  # please remember to edit srslab/__init__.py in response, once updating the version
    author='SRSLabTeam',
    description='Sequential random subspace feature selection under a feature memory budget',
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=[
        package for package in find_packages()
        if package.startswith('srslab')
    ],
    classifiers=classifiers,
    install_requires=install_requires,
    tests_require=tests_require,
    extras_require={'test': tests_require},
    setup_requires=setup_requires,
    entry_points={
        'console_scripts': ['srslab = srslab.cli:main'],
    },
    python_requires='>=3.8',
)
