import sys
from glob import glob

if sys.version_info < (3, 8):
    sys.exit("LEOSM requires Python 3.8 or newer")

try:
    from setuptools import setup, find_packages
except ImportError:
    from distutils.core import setup

_data_files = [
    ('LEOSM/assets/report', glob('LEOSM/assets/report/*.j2')),
    ('LEOSM/assets/configs', glob('LEOSM/assets/configs/*.cfg')),
]

package_data = {
    '': ['*.j2', '*.cfg']
}

with open("README.md", "r") as fh:
    long_description = fh.read()
with open("requirements.txt", "r") as fh:
    requirements = [line.strip() for line in fh if line.strip()]

version = {}
with open("LEOSM/_version.py", "r") as fh:
    exec(fh.read(), version)

setup(
    name='LEOSM',
    version=version['__version__'],
    data_files=_data_files,
    package_data=package_data,
    description="Link-level Monte Carlo simulator for spatial modulation and space shift keying "
                "over LEO satellite downlinks",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires='>=3.8',
    install_requires=requirements,
    entry_points={
        'console_scripts': ['leosm=LEOSM.cli:main'],
    },
    zip_safe=False,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering",
        "Topic :: Communications",
    ],
)
