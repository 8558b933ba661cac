from setuptools import find_packages, setup

# Read the contents of the README file
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="brauerkit",
    version="0.1.0",
    description="Formal Brauer group laws, heights and Landweber exactness of K3 surfaces.",  # noqa: E501
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="",
    packages=find_packages(exclude=["tests"]),
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    license="MIT license",
    python_requires=">=3.9",
    install_requires=["sympy"],
    extras_require={
        "report": ["weasyprint"],
        "tests": ["pytest>=6.4.4", "pytest-cov==4.1.0"],
    },
    entry_points={
        "console_scripts": [
            "brauerkit=brauerkit.__main__:main",
        ]
    },
)
