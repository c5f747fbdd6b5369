"""Linear head reduction, interaction skeletons and their complexity bounds."""

import sys

# terms and skeletons are walked recursively; deep reduction traces need headroom
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__version__ = "0.1.0"
