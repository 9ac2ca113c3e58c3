#!/usr/bin/env python3
"""
flowscope launcher

Runs the command line from a source checkout, e.g.

    python run_flowscope.py synth layered --sizes 20,20,20 --output out
    python run_flowscope.py run --config data/fixtures/two_cliques.cfg
"""

import os
import sys

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from flowscope.cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
