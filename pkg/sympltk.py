"""
Runs the SYMPL-TK command line front end.

Usage: python sympltk.py <command> [options]; see --help for the commands.
Numerical defaults come from config.py.
"""
import sys

from src.cli import main

if __name__ == '__main__':
    sys.exit(main())
