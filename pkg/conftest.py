import os
import sys

# top-level packages (COMMON, GRASSMANN, ...) are imported from a plain checkout
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
