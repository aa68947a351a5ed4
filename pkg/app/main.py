"""Console script entry point."""

import sys

from app.cli.router import main


def run() -> None:
    """Run the ``touter`` command line."""
    sys.exit(main())


if __name__ == "__main__":
    run()
