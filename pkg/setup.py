"""Setup script for proxgraph - optional pip install -e ."""

from setuptools import setup, find_packages

def read(f):
    with open(f, "r", encoding="utf-8") as fh:
        return fh.read()

setup(
    name="proxgraph",
    version="1.0.0",
    description="Proximinal and farthest graphs of finite semimetric spaces",
    long_description=read("README.md"),
    long_description_content_type="text/markdown",
    packages=find_packages(include=["proxgraph", "proxgraph.*"]),
    py_modules=["run_proxgraph"],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.21.0",
        "pandas>=1.3.0",
        "scipy>=1.7.0",
        "joblib>=1.1.0",
        "PyYAML>=6.0",
        "tqdm>=4.62.0",
        "networkx>=2.6",
    ],
    extras_require={
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": ["proxgraph=run_proxgraph:main"],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="metric space ultrametric proximinal graph best proximity pair bipartite",
)
