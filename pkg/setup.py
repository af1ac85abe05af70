"""
Backward compatibility setup.py for stringforge.

The package configuration lives in pyproject.toml.
"""

from setuptools import setup

setup()
