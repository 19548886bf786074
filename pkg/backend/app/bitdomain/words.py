"""
The (r, n-2r, r) decomposition x || g || y of an n-bit word.
"""
from typing import Tuple, Union

from app.core.errors import ParameterError

from .models import SpongeParams, Word


def split3_int(x: int, params: SpongeParams) -> Tuple[int, int, int]:
    """Fast path of split3 on plain integers."""
    r, mid = params.r, params.middle
    return x >> (params.n - r), (x >> r) & ((1 << mid) - 1), x & ((1 << r) - 1)


def join3_int(top: int, middle: int, bottom: int, params: SpongeParams) -> int:
    r = params.r
    return (((top << params.middle) | middle) << r) | bottom


def split3(x: Union[Word, int], params: SpongeParams) -> Tuple[Word, Word, Word]:
    """
    Split an n-bit word into (top r bits, middle n-2r bits, bottom r bits).

    Raises:
        ParameterError: if x is not an n-bit word
    """
    if isinstance(x, Word):
        if x.width != params.n:
            raise ParameterError(f"expected a {params.n}-bit word, got width {x.width}")
        value = x.value
    else:
        value = int(x)
        if not 0 <= value < params.domain_size:
            raise ParameterError(f"value {value} is not an {params.n}-bit word")

    top, middle, bottom = split3_int(value, params)
    return Word(top, params.r), Word(middle, params.middle), Word(bottom, params.r)


def concat(*words: Word) -> Word:
    """Concatenate words, most significant first."""
    result = Word(0, 0)
    for w in words:
        result = result.concat(w)
    return result
