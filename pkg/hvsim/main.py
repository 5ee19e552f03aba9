"""
Main entry point for the hvsim tool.
"""

from hvsim.cli.app import app


def main():
    """Main entry point for the hvsim CLI."""
    app()


if __name__ == "__main__":
    main()
