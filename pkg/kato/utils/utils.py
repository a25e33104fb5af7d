import random
import sys
from fractions import Fraction
from typing import Any, List

import numpy as np

from kato.utils.info import BColors


_VERBOSE = False


def set_verbose(flag: bool) -> None:
    r"""
    switch INFO lines on or off for the whole process
    """
    global _VERBOSE
    _VERBOSE = bool(flag)


def log_info(msg: str) -> None:
    r"""
    print an INFO line on stderr, stdout is reserved for JSON results
    """
    if _VERBOSE:
        print(f"INFO: {msg}", file=sys.stderr)


def log_warning(msg: str) -> None:
    print(f"{BColors.WARNING}WARNING: {msg}{BColors.ENDC}", file=sys.stderr)


def log_error(msg: str) -> None:
    print(f"{BColors.FAIL}ERROR: {msg}{BColors.ENDC}", file=sys.stderr)


def set_random_seed(random_seed: int):
    r"""
    set random seed for reproducibility
    Args:
        random_seed (int): random seed
    """
    random.seed(random_seed)
    np.random.seed(random_seed)
    log_info(f"fixed random seed: {random_seed}")


def parse_int_list(text: str) -> List[int]:
    r"""
    parse "2,3" into [2, 3]
    """
    items = [t.strip() for t in str(text).split(",") if t.strip() != ""]
    return [int(t) for t in items]


def parse_rational(value: Any) -> Fraction:
    r"""
    parse an int, a Fraction or a "num/den" string into a Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cannot read {value!r} as a rational number")


def format_rational(value: Fraction) -> str:
    r"""
    exact rationals are always written as "num/den" (or "num" for integers)
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def random_rational(rng: random.Random, height: int = 5, nonzero: bool = False) -> Fraction:
    r"""
    draw a small rational number num/den with |num| <= height and 1 <= den <= height
    """
    while True:
        value = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if value != 0 or not nonzero:
            return value