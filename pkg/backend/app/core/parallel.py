"""
Chunked, order-preserving execution over a process pool.

Results come back in chunk order whatever the worker count, so merged
reports are identical for 1 or N workers.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from tqdm.auto import tqdm

from .config import settings
from .logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunk_ranges(total: int, chunk_size: Optional[int] = None) -> List[range]:
    """Split range(total) into consecutive ranges of at most chunk_size items."""
    size = max(1, chunk_size or settings.TRIAL_CHUNK_SIZE)
    return [range(start, min(start + size, total)) for start in range(0, total, size)]


def run_chunked(
    fn: Callable[[T], R],
    chunks: Sequence[T],
    workers: Optional[int] = None,
    desc: str = "chunks",
) -> List[R]:
    """
    Map fn over chunks.

    fn and every chunk must be picklable when workers > 1 (top-level
    functions, functools.partial, dataclasses).
    """
    n_workers = settings.LAB_WORKERS if workers is None else workers
    quiet = not settings.SHOW_PROGRESS

    if n_workers <= 1 or len(chunks) <= 1:
        return [fn(chunk) for chunk in tqdm(chunks, desc=desc, disable=quiet)]

    logger.debug("Dispatching chunks to process pool", chunks=len(chunks), workers=n_workers)
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        results: Iterable[R] = pool.map(fn, chunks)
        return list(tqdm(results, total=len(chunks), desc=desc, disable=quiet))
