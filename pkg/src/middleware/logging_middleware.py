"""
Logging middleware for command tracking.

Every CLI command runs through this middleware, which assigns a request id,
logs start and completion (or failure) and records the run in the metrics
collector.
"""

import logging
import time
from typing import Any, Callable, Dict, Optional
from uuid import uuid4

from src.utils.metrics import metrics_collector

logger = logging.getLogger(__name__)

# runs slower than this are logged as warnings
SLOW_COMMAND_MS = 60_000


class RequestLogger:
    """Tracks and logs command runs."""

    def __init__(self):
        self.active_requests: Dict[str, Dict[str, Any]] = {}

    def start_request(self, request_id: str, request_type: str,
                      metadata: Optional[Dict[str, Any]] = None) -> None:
        """Start tracking a run."""
        self.active_requests[request_id] = {
            'type': request_type,
            'start_time': time.perf_counter(),
            'metadata': metadata or {}
        }

    def end_request(self, request_id: str, status: str = 'success',
                    error: Optional[str] = None) -> Optional[Dict[str, Any]]:
        """Stop tracking a run and return its record."""
        if request_id not in self.active_requests:
            return None

        request_data = self.active_requests.pop(request_id)
        duration = time.perf_counter() - request_data['start_time']
        return {
            'request_id': request_id,
            'type': request_data['type'],
            'duration_ms': int(duration * 1000),
            'status': status,
            'error': error,
            'metadata': request_data['metadata']
        }


# Global request logger instance
request_logger = RequestLogger()


def _metadata(args) -> Dict[str, Any]:
    """Flag values worth keeping next to a run."""
    keys = ('file', 'engine', 'n_shift', 'mode', 'seed', 'count', 'workers')
    return {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}


def logging_middleware(args, next: Callable[[], int]) -> int:
    """
    Run one command with request logging.

    Args:
        args: Parsed command line arguments; ``args.command`` names the command
        next: The command handler, returning an exit code

    Returns:
        The handler's exit code

    Raises:
        Whatever the handler raises, after logging it
    """
    request_id = str(uuid4())
    request_type = f"command:{getattr(args, 'command', None) or 'unknown'}"
    metadata = _metadata(args)

    logger.info(
        f"Command request: {request_id}",
        extra={'request_id': request_id, 'request_type': request_type, **metadata}
    )
    request_logger.start_request(request_id, request_type, metadata)

    try:
        exit_code = next()
    except Exception as e:
        error_message = str(e)
        metrics = request_logger.end_request(request_id, status='error', error=error_message)
        logger.error(
            f"Command failed: {request_id}",
            extra={
                'request_id': request_id,
                'error': error_message,
                'request_type': request_type,
                'duration_ms': metrics['duration_ms'] if metrics else 0
            },
            exc_info=logger.isEnabledFor(logging.DEBUG)
        )
        if metrics:
            metrics_collector.record_request(
                request_type=request_type,
                duration_ms=metrics['duration_ms'],
                status='error',
                metadata={**metadata, 'error': error_message}
            )
        metrics_collector.increment_counter('errors')
        metrics_collector.increment_counter(f'errors:{request_type}')
        raise

    status = 'success' if exit_code == 0 else 'failure'
    metrics = request_logger.end_request(request_id, status=status)
    if metrics:
        logger.info(
            f"Command completed: {request_id}",
            extra={
                'request_id': request_id,
                'duration_ms': metrics['duration_ms'],
                'request_type': request_type,
                'exit_code': exit_code
            }
        )
        metrics_collector.record_request(
            request_type=request_type,
            duration_ms=metrics['duration_ms'],
            status=status,
            metadata=metadata
        )
        if metrics['duration_ms'] > SLOW_COMMAND_MS:
            logger.warning(
                f"Slow command detected: {request_id}",
                extra={'request_id': request_id, 'duration_ms': metrics['duration_ms']}
            )
            metrics_collector.increment_counter('slow_requests')
    return exit_code
