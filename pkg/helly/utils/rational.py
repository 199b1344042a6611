"""Exact rational helpers: literals, integer roots and Gaussian elimination."""
import math
import re
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from helly.utils.validation import MalformedInputError

_RATIONAL_LITERAL = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def parse_scalar(value: object) -> Fraction:
    """
    Convert an int, Fraction or ``p/q`` literal into a Fraction.

    Floats are rejected: no binary approximation is allowed into the kernel.

    Examples:
        >>> parse_scalar("3/6")
        Fraction(1, 2)
        >>> parse_scalar(-4)
        Fraction(-4, 1)
        >>> parse_scalar("1/0")
        Traceback (most recent call last):
        ...
        helly.utils.validation.MalformedInputError: Zero denominator in '1/0'
    """
    if isinstance(value, bool):
        raise MalformedInputError(f"Not a rational value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_LITERAL.match(text):
            raise MalformedInputError(f"Not a rational literal: {value!r}")
        if "/" in text:
            numerator, denominator = text.split("/")
            if int(denominator) == 0:
                raise MalformedInputError(f"Zero denominator in {value!r}")
            return Fraction(int(numerator), int(denominator))
        return Fraction(int(text))
    raise MalformedInputError(f"Not a rational value: {value!r}")


def format_scalar(value: Fraction) -> str:
    """
    Format a rational as ``p/q`` (integers included, e.g. ``1/1``).

    Examples:
        >>> format_scalar(Fraction(2, 4))
        '1/2'
        >>> format_scalar(Fraction(3))
        '3/1'
    """
    return f"{value.numerator}/{value.denominator}"


def format_literal(value: Fraction) -> str:
    """Short literal form used in instance files: ``3`` or ``-1/2``."""
    return str(value)


def integer_nth_root(value: int, n: int) -> int:
    """
    Return floor(value ** (1/n)) for a non-negative integer.

    Examples:
        >>> integer_nth_root(27, 3)
        3
        >>> integer_nth_root(26, 3)
        2
    """
    if value < 0 or n < 1:
        raise MalformedInputError(f"Cannot take root {n} of {value}")
    if value < 2 or n == 1:
        return value
    if n == 2:
        return math.isqrt(value)
    x = 1 << ((value.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + value // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def exact_root(value: Fraction, n: int) -> Optional[Fraction]:
    """
    Return the n-th root of a non-negative rational when it is rational, else None.

    Examples:
        >>> exact_root(Fraction(25, 64), 2)
        Fraction(5, 8)
        >>> exact_root(Fraction(1, 2), 2) is None
        True
    """
    p_root = integer_nth_root(value.numerator, n)
    q_root = integer_nth_root(value.denominator, n)
    if p_root ** n == value.numerator and q_root ** n == value.denominator:
        return Fraction(p_root, q_root)
    return None


def root_enclosure(value: Fraction, n: int, resolution: int) -> Tuple[Fraction, Fraction]:
    """
    Enclose value ** (1/n) between two rationals with denominator ``resolution``.

    The enclosure collapses to a single point when the root is rational.
    """
    exact = exact_root(value, n)
    if exact is not None:
        return exact, exact
    scaled = value.numerator * resolution ** n // value.denominator
    low = integer_nth_root(scaled, n)
    return Fraction(low, resolution), Fraction(low + 1, resolution)


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """
    Exact rank of a rational matrix by Gaussian elimination.

    Examples:
        >>> matrix_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
        1
    """
    matrix: List[List[Fraction]] = [[Fraction(a) for a in row] for row in rows]
    if not matrix:
        return 0
    width = len(matrix[0])
    rank = 0
    for column in range(width):
        pivot = next(
            (i for i in range(rank, len(matrix)) if matrix[i][column] != 0), None
        )
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        pivot_row = matrix[rank]
        for i in range(rank + 1, len(matrix)):
            factor = matrix[i][column] / pivot_row[column]
            if factor:
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], pivot_row)]
        rank += 1
        if rank == len(matrix):
            break
    return rank
