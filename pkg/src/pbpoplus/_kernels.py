"""Vertex-assignment search kernels.

Both backends enumerate the same assignments in the same lexicographic order
(levels in the given vertex order, candidates in increasing index order):

* ``numba``: an iterative depth-first search compiled with ``@njit``. It is
  resumable, so the caller can pull one solution at a time.
* ``numpy``: a level-wise breadth-first expansion over blocks of partial
  assignments, vectorised with numpy. Blocks are expanded depth-first to bound
  memory, which also keeps the output order lexicographic.

``PBPO_BACKEND`` (``numba`` or ``numpy``) picks the backend; numba is the
default when it imports. ``PBPO_MAX_ENUM`` caps the number of candidate
expansions per search (default 10**7).
"""
from __future__ import annotations

import os

import numpy as np

from .errors import EnumerationLimitExceeded

try:  # numba is an optional accelerator
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

DEFAULT_MAX_ENUM = 10 ** 7
BLOCK = 4096


def backend() -> str:
    want = os.environ.get("PBPO_BACKEND", "").strip().lower()
    if want == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def max_enum() -> int:
    raw = os.environ.get("PBPO_MAX_ENUM")
    if not raw:
        return DEFAULT_MAX_ENUM
    try:
        return int(float(raw))
    except ValueError:
        return DEFAULT_MAX_ENUM


class SearchProblem:
    """Integer encoding of one vertex-assignment problem.

    ``cand_ptr``/``cand_idx`` hold the candidate list of each level in CSR
    form. ``close_ptr``/``close_edges`` list, per level, the domain edges
    whose endpoints are both assigned once that level is fixed;
    ``esrc_lvl``/``etgt_lvl`` give those endpoints as levels, and
    ``ecompat[e, b1, b2]`` says whether the codomain has a usable edge
    ``b1 -> b2`` for domain edge ``e``.
    """

    def __init__(self, n_cod, cand_lists, close_lists, esrc_lvl, etgt_lvl, ecompat, injective):
        self.n = len(cand_lists)
        self.n_cod = n_cod
        self.cand_ptr = np.zeros(self.n + 1, dtype=np.int64)
        self.cand_ptr[1:] = np.cumsum([len(c) for c in cand_lists])
        self.cand_idx = (np.concatenate([np.asarray(c, dtype=np.int64) for c in cand_lists])
                         if self.n else np.zeros(0, dtype=np.int64))
        self.close_ptr = np.zeros(self.n + 1, dtype=np.int64)
        self.close_ptr[1:] = np.cumsum([len(c) for c in close_lists])
        self.close_edges = (np.concatenate([np.asarray(c, dtype=np.int64) for c in close_lists])
                            if self.n else np.zeros(0, dtype=np.int64))
        self.esrc_lvl = np.asarray(esrc_lvl, dtype=np.int64)
        self.etgt_lvl = np.asarray(etgt_lvl, dtype=np.int64)
        self.ecompat = np.ascontiguousarray(ecompat, dtype=np.bool_)
        self.injective = bool(injective)


def solve(problem: SearchProblem, which: str | None = None):
    """Yield each complete assignment as an int array indexed by level."""
    which = which or backend()
    if problem.n == 0:
        yield np.zeros(0, dtype=np.int64)
        return
    if which == "numba":
        yield from _solve_numba(problem)
    else:
        yield from _solve_numpy(problem)


# -- numba backend -----------------------------------------------------------

if HAVE_NUMBA:
    @njit(cache=True)
    def _dfs_next(cand_ptr, cand_idx, close_ptr, close_edges, esrc_lvl, etgt_lvl,
                  ecompat, injective, assign, ptr, used, state, limit):
        # state = [depth, expansions]; returns 1 on solution, 0 when done, -1 on limit
        n = assign.shape[0]
        k = state[0]
        exp = state[1]
        if k == n:
            k -= 1
            if injective:
                used[assign[k]] = 0
        while k >= 0:
            found = False
            end = cand_ptr[k + 1]
            while ptr[k] < end:
                b = cand_idx[ptr[k]]
                ptr[k] += 1
                exp += 1
                if exp > limit:
                    state[0] = k
                    state[1] = exp
                    return -1
                if injective and used[b]:
                    continue
                assign[k] = b
                ok = True
                for j in range(close_ptr[k], close_ptr[k + 1]):
                    e = close_edges[j]
                    if not ecompat[e, assign[esrc_lvl[e]], assign[etgt_lvl[e]]]:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if found:
                if injective:
                    used[assign[k]] = 1
                k += 1
                if k == n:
                    state[0] = k
                    state[1] = exp
                    return 1
                ptr[k] = cand_ptr[k]
            else:
                k -= 1
                if k >= 0 and injective:
                    used[assign[k]] = 0
        state[0] = 0
        state[1] = exp
        return 0


def _solve_numba(p: SearchProblem):
    assign = np.full(p.n, -1, dtype=np.int64)
    ptr = np.zeros(p.n, dtype=np.int64)
    ptr[0] = p.cand_ptr[0]
    used = np.zeros(max(p.n_cod, 1), dtype=np.uint8)
    state = np.zeros(2, dtype=np.int64)
    limit = max_enum()
    while True:
        status = _dfs_next(p.cand_ptr, p.cand_idx, p.close_ptr, p.close_edges, p.esrc_lvl,
                           p.etgt_lvl, p.ecompat, p.injective, assign, ptr, used, state, limit)
        if status == 1:
            yield assign.copy()
        elif status == 0:
            return
        else:
            raise EnumerationLimitExceeded(
                f"morphism search exceeded {limit} candidate expansions (PBPO_MAX_ENUM)")


# -- numpy backend -----------------------------------------------------------

def _solve_numpy(p: SearchProblem):
    limit = max_enum()
    exp = 0
    stack = [(0, np.zeros((1, p.n), dtype=np.int64))]
    while stack:
        k, rows = stack.pop()
        if k == p.n:
            yield from rows
            continue
        cands = p.cand_idx[p.cand_ptr[k]:p.cand_ptr[k + 1]]
        m, c = rows.shape[0], cands.shape[0]
        exp += m * c
        if exp > limit:
            raise EnumerationLimitExceeded(
                f"morphism search exceeded {limit} candidate expansions (PBPO_MAX_ENUM)")
        if c == 0:
            continue
        new = np.repeat(rows, c, axis=0)
        new[:, k] = np.tile(cands, m)
        keep = np.ones(new.shape[0], dtype=bool)
        if p.injective and k:
            keep &= ~(new[:, :k] == new[:, [k]]).any(axis=1)
        for e in p.close_edges[p.close_ptr[k]:p.close_ptr[k + 1]]:
            keep &= p.ecompat[e, new[:, p.esrc_lvl[e]], new[:, p.etgt_lvl[e]]]
        new = new[keep]
        # push blocks in reverse so the first block is expanded next
        for start in range(((new.shape[0] - 1) // BLOCK) * BLOCK, -1, -BLOCK):
            stack.append((k + 1, new[start:start + BLOCK]))
