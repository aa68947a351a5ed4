"""One module per subcommand; each exposes ``register`` and ``handle``."""

from app.cli.commands import bench, gen, inv, tprod, verify

COMMANDS = (tprod, inv, verify, bench, gen)

__all__ = ["COMMANDS", "bench", "gen", "inv", "tprod", "verify"]
