#!/usr/bin/env python3
"""
Foliated Singularity Toolkit - Main Entry Point
Version: 1.0.0
Description: Exact Boardman symbols and Jacobian codimensions of jets, and
leafwise critical points and gradient flows of functions on foliated charts
"""

import sys
import logging
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from cli.command_line import run


def main():
    """Main application entry point"""
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        sys.exit(130)
    except Exception as e:
        logging.error(f"Unexpected failure: {e}", exc_info=True)
        print(f"FATAL ERROR: {e}", file=sys.stderr)
        sys.exit(3)


if __name__ == "__main__":
    main()
