#!/usr/bin/env python3

"""
Main Entry Point

Run the warpcurv command line.

Usage:
    python main.py verify --config configs/demo.toml

    # Or with uv:
    uv run main.py selftest
"""

import sys


def main() -> int:
    """Main entry point."""
    try:
        from warpcurv.cli import main as cli_main
    except ImportError as e:
        print(f"❌ Import error: {e}")
        print("Please ensure all dependencies are installed:")
        print("  uv pip install -e .")
        return 2
    return cli_main()


if __name__ == "__main__":
    sys.exit(main())
