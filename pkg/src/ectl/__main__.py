"""Allows ``python -m ectl``."""
import sys

from .frontend.cli import main

sys.exit(main())
