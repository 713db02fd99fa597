#!/usr/bin/env python3

from .cli import main_with_usage
import sys

sys.exit(main_with_usage(sys.argv[1:]))
