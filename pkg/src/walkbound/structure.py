"""Support structure: the bipartite graph, components, connectivity.

The support of an m x n matrix is read as a bipartite graph on m row
vertices and n column vertices, with an edge (i, j) whenever |a_ij| is
above the zero threshold.  Components never mix indices from different
blocks of a block-diagonal arrangement, and isolated vertices (zero rows
or columns) belong to no component.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    DenseMatrix,
    detect_scalar,
    support_mask,
)
from .errors import NotScalarError, PreconditionError
from .spectral import singular_values


@dataclass(frozen=True)
class BipartiteGraph:
    m: int
    n: int
    edges: frozenset


def bipartite_graph(a: DenseMatrix) -> BipartiteGraph:
    """Support graph with one vertex per row and per column."""
    mask = support_mask(a)
    edges = frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(mask)))
    return BipartiteGraph(a.m, a.n, edges)


@dataclass(frozen=True)
class Component:
    row_indices: tuple
    col_indices: tuple
    submatrix: DenseMatrix


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple
    row_perm: tuple
    col_perm: tuple
    isolated_rows: tuple
    isolated_cols: tuple


def decompose(a: DenseMatrix) -> ComponentDecomposition:
    """Connected components of the support graph, by breadth-first search.

    Components are ordered by their smallest row index and carry the
    extracted submatrix.  The returned permutations list original row and
    column indices in an order that makes the matrix block diagonal, with
    isolated (all-zero) rows and columns moved to the end.
    """
    mask = support_mask(a)
    m, n = a.shape
    row_seen = np.zeros(m, dtype=bool)
    col_seen = np.zeros(n, dtype=bool)
    components = []
    for start in range(m):
        if row_seen[start] or not mask[start].any():
            continue
        rows = []
        cols = []
        queue = deque([("r", start)])
        row_seen[start] = True
        while queue:
            side, idx = queue.popleft()
            if side == "r":
                rows.append(idx)
                for j in np.flatnonzero(mask[idx]):
                    if not col_seen[j]:
                        col_seen[j] = True
                        queue.append(("c", int(j)))
            else:
                cols.append(idx)
                for i in np.flatnonzero(mask[:, idx]):
                    if not row_seen[i]:
                        row_seen[i] = True
                        queue.append(("r", int(i)))
        rows.sort()
        cols.sort()
        sub = DenseMatrix(a.data[np.ix_(rows, cols)])
        components.append(Component(tuple(rows), tuple(cols), sub))
    isolated_rows = tuple(i for i in range(m) if not mask[i].any())
    isolated_cols = tuple(j for j in range(n) if not mask[:, j].any())
    row_perm = tuple(
        [i for comp in components for i in comp.row_indices] + list(isolated_rows)
    )
    col_perm = tuple(
        [j for comp in components for j in comp.col_indices] + list(isolated_cols)
    )
    return ComponentDecomposition(
        tuple(components), row_perm, col_perm, isolated_rows, isolated_cols
    )


def is_connected(a: DenseMatrix) -> bool:
    """True when the support graph is one component covering every vertex."""
    dec = decompose(a)
    if dec.isolated_rows or dec.isolated_cols:
        return False
    return len(dec.components) == 1


def connectivity_via_powers(a: DenseMatrix, i: int, j: int,
                            r_cap: int | None = None) -> tuple[bool, int | None]:
    """Reachability of column j from row i through support products.

    Row i and column j communicate exactly when some matrix in the family
    (A A*)^r A has a nonzero (i, j) entry.  Works on the nonnegative part
    of a scalar matrix, where products cannot cancel, and stops early once
    the accumulated support stops growing.  Returns (reachable, r) with
    the first power r that exhibits the entry, or (False, None).
    """
    if not (0 <= i < a.m and 0 <= j < a.n):
        raise PreconditionError(f"index pair ({i}, {j}) outside {a.m}x{a.n}")
    sc = detect_scalar(a)
    if not sc.is_scalar:
        raise NotScalarError("power connectivity is defined for scalar matrices")
    nonneg = sc.nonneg_part.data.real
    if r_cap is None:
        r_cap = a.m + a.n
    current = nonneg.copy()
    peak = current.max()
    reach = current > 1e-12 * max(peak, 1e-300)
    if reach[i, j]:
        return True, 0
    accumulated = reach.copy()
    gram = nonneg @ nonneg.T
    for r in range(1, r_cap + 1):
        current = gram @ current
        peak = current.max()
        if peak > 1e280:
            current = current / peak
            peak = 1.0
        reach = current > 1e-12 * max(peak, 1e-300)
        if reach[i, j]:
            return True, r
        new = reach & ~accumulated
        if not new.any():
            return False, None
        accumulated |= reach
    return False, None


def singular_multiset_check(a: DenseMatrix, tol: float = DEFAULT_TOL) -> bool:
    """Whole-matrix nonzero singular values versus the component merge.

    Compares the sorted nonzero singular values of the matrix with the
    union of the nonzero singular values of its components; isolated rows
    and columns only ever contribute zeros.  Values within tol (scaled by
    the largest value) of zero are discarded before comparing.
    """
    whole = singular_values(a)
    top = float(whole[0]) if whole.size else 0.0
    scale = max(1.0, top)
    merged: list[float] = []
    for comp in decompose(a).components:
        merged.extend(float(s) for s in singular_values(comp.submatrix))
    merged.sort(reverse=True)
    keep_whole = [float(s) for s in whole if s > tol * scale]
    keep_merged = [s for s in merged if s > tol * scale]
    if len(keep_whole) != len(keep_merged):
        return False
    return all(
        abs(x - y) <= tol * scale for x, y in zip(keep_whole, keep_merged)
    )
