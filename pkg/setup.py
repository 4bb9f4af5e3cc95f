from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#") and not line.startswith("-r")]

setup(
    name="microrobot-toolkit",
    version="1.0.0",
    description="Design and simulation toolkit for piezo-driven legged microrobots",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["src", "src.*"]),
    package_data={"src.presets": ["*.yaml"]},
    python_requires=">=3.10",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "microrobot=src.cli.main:main",
        ],
    },
)
