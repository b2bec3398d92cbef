#!/usr/bin/env python3
"""
repvar - irreducible components of module varieties over truncated path algebras.
"""

__version__ = "0.3.0"
