"""Closed-form census: cell counts, Euler characteristics, the component
table, emptiness predicates, and the alternating binomial identity.

Everything here is exact integer (or exact rational) arithmetic; the
enumeration modules cross-check every formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .codec import ComponentKey, base_parity

POINT = "point"
CIRCLE = "circle"
CONTRACTIBLE = "contractible"

# The widely quoted square count for the big components of Hom(C_9,C_3)
# is 27; it fails the Euler-characteristic constraint 252 - 567 + c_2
# - 90 = 0 and both the closed form and brute-force enumeration give
# 405.  Verification flags rather than reproduces it.
REPORTED_C9_C3_SQUARES = 27
CORRECT_C9_C3_SQUARES = 405


@dataclass(frozen=True)
class CensusEntry:
    """One predicted connected component."""

    key: ComponentKey
    predicted_type: str
    label: str


def is_empty(m: int, n: int, family: str = "cycle") -> bool:
    """Whether Hom(C_m, C_n) (or Hom(C_m, L_n)) has no cells at all."""
    if family == "path":
        return m % 2 == 1
    if m % 2 == 1 and n % 2 == 0:
        return True
    if m % 2 == 1 and n % 2 == 1 and m < n:
        return True
    return False


def component_r_values(m: int, n: int) -> list[int]:
    """Returning counts r with an integer winding k solving m = nk + 2r."""
    return [r for r in range(m + 1) if (m - 2 * r) % n == 0]


def cell_count(m: int, n: int, r: int, d: int) -> int:
    """Number of d-cells of one component with r returning points.

    Requires a cycle target with n != 4.  N is n for odd n and n/2 for
    even n (base parity splits the stratum in two).  The isolated
    strata r = 0 and r = m consist of a single vertex each.
    """
    if n < 3 or n == 4:
        raise ValueError("cell counts require a cycle target with n >= 3, n != 4")
    if r not in component_r_values(m, n):
        raise ValueError(f"no winding number solves m = nk + 2r for m={m}, n={n}, r={r}")
    if r in (0, m):
        if d == 0:
            return 1
        if d < 0:
            raise ValueError("dimension must be nonnegative")
        return 0
    if not 0 <= d <= min(r, m - r):
        raise ValueError(f"dimension {d} outside 0..min(r, m-r) = {min(r, m - r)}")
    N = n if n % 2 else n // 2
    # equals N * m * (m-d-1)! / (d! (r-d)! (m-r-d)!), in binomial form
    patterns = comb(m - d, d) + (comb(m - d - 1, d - 1) if d >= 1 else 0)
    return N * patterns * comb(m - 2 * d, r - d)


def stratum_cell_count(m: int, n: int, r: int, d: int) -> int:
    """Total d-cells with r returning points, across parity classes."""
    per_component = cell_count(m, n, r, d)
    if r in (0, m):
        return n * per_component if d == 0 else 0
    return per_component * (2 if n % 2 == 0 else 1)


def euler_char(m: int, n: int) -> int:
    """Euler characteristic of Hom(C_m, C_n); 0 covers the empty complex."""
    if n < 3:
        raise ValueError("target cycle needs n >= 3")
    if n == 4:
        return 2 if m % 2 == 0 else 0
    if m % n == 0:
        return 2 * n
    return 0


def table9(m: int, n: int) -> list[CensusEntry]:
    """The predicted component list of Hom(C_m, C_n).

    Point components appear once per base label (r = 0 and r = m,
    forced windings); every other stratum contributes one circle for
    odd n and one per base parity for even n.  For n = 4 the complex
    splits into two contractible halves by first-coordinate parity.
    """
    if n < 3:
        raise ValueError("target cycle needs n >= 3")
    if is_empty(m, n):
        return []
    if n == 4:
        return [
            CensusEntry(ComponentKey(r=None, parity=p), CONTRACTIBLE, f"half^{p}")
            for p in (1, 2)
        ]
    entries = []
    for r in component_r_values(m, n):
        if r in (0, m):
            for base in range(1, n + 1):
                entries.append(
                    CensusEntry(
                        ComponentKey(r=r, base=base),
                        POINT,
                        f"pt(r={r}, a1={base})",
                    )
                )
        elif n % 2 == 0:
            for p in (1, 2):
                entries.append(
                    CensusEntry(ComponentKey(r=r, parity=p), CIRCLE, f"D_{r}^{p}")
                )
        else:
            entries.append(CensusEntry(ComponentKey(r=r), CIRCLE, f"D_{r}"))
    return entries


def table9_row_counts(m: int, n: int) -> tuple[int, int]:
    """(points, circles) for the row of (m, n), from the closed forms.

    This is the row-shape arithmetic of the component table: largest
    odd/even multiples and the +-l ladders; table9 must agree with it.
    """
    if is_empty(m, n):
        return (0, 0)
    if n == 4:
        return (0, 0)  # two contractible halves, outside the point/circle rows
    if n % 2 == 0:
        half = n // 2
        k = m // 2
        if k % half == 0:
            s = k // half
            return (2 * n, 4 * s - 2)
        return (0, 2 * (2 * (k // half) + 1))
    if m % n == 0:
        s = m // n
        return (2 * n, s - 1)
    q = m // n
    if m % 2 == 1:
        q_odd = q if q % 2 == 1 else q - 1
        return (0, q_odd + 1)
    q_even = q if q % 2 == 0 else q - 1
    return (0, q_even + 1)


def alternating_identity(m: int, r: int) -> Fraction:
    """Sum over d of (-1)^d (m-d-1)! / (d! (r-d)! (m-r-d)!), exactly.

    Vanishes for every 1 <= r <= m-1; it is the Euler-characteristic
    identity of the circle components with the N*m prefactor removed.
    """
    if not 1 <= r <= m - 1:
        raise ValueError("identity is stated for 1 <= r <= m-1")
    total = Fraction(0)
    for d in range(min(r, m - r) + 1):
        term = Fraction(
            factorial(m - d - 1),
            factorial(d) * factorial(r - d) * factorial(m - r - d),
        )
        total += -term if d % 2 else term
    return total
