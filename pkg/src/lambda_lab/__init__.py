"""Exact algebra for products of finite fields and the schemes they define."""

__version__ = "0.1.0"
