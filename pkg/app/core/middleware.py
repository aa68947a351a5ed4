"""Command middleware: run ids and timing around each CLI invocation."""

import time
import uuid
from collections.abc import Iterator
from contextlib import contextmanager

import structlog

logger = structlog.get_logger(__name__)


@contextmanager
def command_context(command: str) -> Iterator[str]:
    """Bind a run id for the duration of a command and log its outcome.

    Yields:
        The short run id bound into the structlog context
    """
    run_id = str(uuid.uuid4())[:8]
    structlog.contextvars.bind_contextvars(run_id=run_id, command=command)
    start_time = time.perf_counter()
    logger.info("command.started")
    try:
        yield run_id
    except Exception as e:
        duration = time.perf_counter() - start_time
        logger.info("command.error", duration=round(duration, 3), error=str(e))
        raise
    else:
        duration = time.perf_counter() - start_time
        logger.info("command.completed", duration=round(duration, 3))
    finally:
        structlog.contextvars.unbind_contextvars("run_id", "command")
