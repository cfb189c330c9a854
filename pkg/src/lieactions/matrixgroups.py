"""Matrix models of the groups that act: samplers, generators, checks.

Group tags:
  "ST"  upper triangular, positive diagonal, determinant 1
  "U"   unitriangular (upper triangular, unit diagonal)
  "SL2" 2x2 of determinant 1
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "GROUP_TAGS",
    "random_element",
    "generators",
    "in_group",
]

GROUP_TAGS = ("ST", "U", "SL2")


def random_st_element(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random ST(n): strict uppers in [-2, 2], diagonal in [0.5, 2]
    renormalized to determinant one."""
    g = np.zeros((n, n))
    diag = rng.uniform(0.5, 2.0, size=n)
    diag = diag / diag.prod() ** (1.0 / n)
    for i in range(n):
        g[i, i] = diag[i]
        for j in range(i + 1, n):
            g[i, j] = rng.uniform(-2.0, 2.0)
    return g


def random_unitriangular(rng: np.random.Generator, n: int) -> np.ndarray:
    g = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            g[i, j] = rng.uniform(-2.0, 2.0)
    return g


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    while True:
        a = rng.uniform(-1.5, 1.5, size=(2, 2))
        det = np.linalg.det(a)
        if det > 0.05:
            return a / np.sqrt(det)


def random_element(rng: np.random.Generator, group: str, n: int) -> np.ndarray:
    if group == "ST":
        return random_st_element(rng, n)
    if group == "U":
        return random_unitriangular(rng, n)
    if group == "SL2":
        return random_sl2(rng)
    raise ValueError(f"unknown group tag {group!r}")


def st_generators(n: int) -> list[tuple[str, np.ndarray]]:
    """One diagonal and one shear generator per basis direction."""
    gens = []
    for i in range(n - 1):
        g = np.eye(n)
        g[i, i] = 2.0
        g[i + 1, i + 1] = 0.5
        gens.append((f"diag{i + 1}", g))
    for i in range(n):
        for j in range(i + 1, n):
            g = np.eye(n)
            g[i, j] = 1.0
            gens.append((f"shear{i + 1}{j + 1}", g))
    return gens


def unitriangular_generators(n: int) -> list[tuple[str, np.ndarray]]:
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            g = np.eye(n)
            g[i, j] = 1.0
            gens.append((f"shear{i + 1}{j + 1}", g))
    return gens


def generators(group: str, n: int) -> list[tuple[str, np.ndarray]]:
    if group == "ST":
        return st_generators(n)
    if group == "U":
        return unitriangular_generators(n)
    if group == "SL2":
        return [
            ("diag", np.array([[2.0, 0.0], [0.0, 0.5]])),
            ("shear", np.array([[1.0, 1.0], [0.0, 1.0]])),
            ("rot", np.array([[np.cos(0.7), -np.sin(0.7)], [np.sin(0.7), np.cos(0.7)]])),
        ]
    raise ValueError(f"unknown group tag {group!r}")


def in_group(g: np.ndarray, group: str, tol: float = 1e-12) -> bool:
    """Membership check at float tolerance for the tagged group."""
    n = g.shape[0]
    if group in ("ST", "U"):
        below = max((abs(g[i, j]) for i in range(n) for j in range(i)), default=0.0)
        if below > tol:
            return False
        if group == "U":
            return bool(np.all(np.abs(np.diag(g) - 1.0) <= tol))
        return bool(np.all(np.diag(g) > 0) and abs(np.prod(np.diag(g)) - 1.0) <= tol * 10)
    if group == "SL2":
        return abs(np.linalg.det(g) - 1.0) <= tol * 10
    raise ValueError(f"unknown group tag {group!r}")
