# Shim for tools that still call setup.py; metadata lives in pyproject.toml and setup.cfg.
from setuptools import setup

setup()
