from typing import Iterable, List, Tuple


def dot(x: int, y: int) -> int:
    """Inner product of two bit vectors mod 2."""
    return (x & y).bit_count() & 1


def to_bitstring(value: int, n: int) -> str:
    return format(value, f"0{n}b")


def from_bitstring(bits: str) -> int:
    return int(bits, 2)


def _check_width(equations: Iterable[int], n: int) -> List[int]:
    rows = [int(row) for row in equations]
    for row in rows:
        if not 0 <= row < (1 << n):
            raise ValueError(f"Equation {row} does not fit in {n} bits")
    return rows


def _row_reduce(rows: List[int], n: int) -> List[Tuple[int, int]]:
    """Reduced row echelon form as (pivot bit, row) pairs, lowest bit pivoted first."""
    remaining = [row for row in rows if row]
    pivots: List[Tuple[int, int]] = []
    for bit in range(n):
        mask = 1 << bit
        index = next((i for i, row in enumerate(remaining) if row & mask), None)
        if index is None:
            continue
        pivot_row = remaining.pop(index)
        remaining = [row ^ pivot_row if row & mask else row for row in remaining]
        remaining = [row for row in remaining if row]
        pivots = [(b, row ^ pivot_row if row & mask else row) for b, row in pivots]
        pivots.append((bit, pivot_row))
    return pivots


def gf2_rank(equations: Iterable[int], n: int) -> int:
    return len(_row_reduce(_check_width(equations, n), n))


def solve_gf2(equations: Iterable[int], n: int) -> List[int]:
    """
    Basis of the null space {r : y.r = 0 mod 2 for every equation y}.

    Vectors are n-bit integers. The basis has one vector per free column,
    in increasing bit order, so the result is deterministic.
    """
    pivots = _row_reduce(_check_width(equations, n), n)
    pivot_bits = {bit for bit, _ in pivots}
    basis = []
    for free in range(n):
        if free in pivot_bits:
            continue
        vector = 1 << free
        for bit, row in pivots:
            if row & (1 << free):
                vector |= 1 << bit
        basis.append(vector)
    return basis
