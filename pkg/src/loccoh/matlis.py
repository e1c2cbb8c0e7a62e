"""Degreewise graded duality: D(M)_d = Hom_k(M_{-d}, k) with transposed actions.

D(M) is never materialized as a module presentation (it is not finitely
generated); only finite windows of graded pieces with variable action maps.
Each piece is exactly computable from M, so a window is an evaluation region:
degrees whose computation would need pieces outside the declared window are
reported as boundary-incomplete rather than silently extended.
"""

from __future__ import annotations

import time

import numpy as np

from . import linalg
from .groebner import Ideal
from .homology import ext, grade
from .modules import ModulePresentation
from .report import CAVEAT_GRADED_MODEL, VerificationReport
from .rings import Polynomial, Ring, RingError


class DualWindow:
    """Graded pieces of the dual of M on a degree range, with variable actions."""

    def __init__(self, m: ModulePresentation, lo: int, hi: int):
        if m.mode != "Z":
            raise RingError("dual windows are taken in total-degree grading")
        self.module = m
        self.lo = lo
        self.hi = hi
        self._dims: dict[int, int] = {}
        self._actions: dict[tuple[int, int], np.ndarray] = {}

    @property
    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def contains(self, d: int) -> bool:
        return self.lo <= d <= self.hi

    def dim(self, d: int) -> int:
        got = self._dims.get(d)
        if got is None:
            got = self.module.hilbert_function(-d)
            self._dims[d] = got
        return got

    def action(self, j: int, d: int) -> np.ndarray:
        """Matrix of x_j: D(M)_d -> D(M)_{d+1}: the transpose of multiplication."""
        key = (j, d)
        got = self._actions.get(key)
        if got is None:
            mult = self.module.multiplication_matrix(self.module.ring.gens[j], -d - 1)
            got = mult.T.copy()
            self._actions[key] = got
        return got

    def poly_action(self, f: Polynomial, d: int) -> np.ndarray:
        """Matrix of a homogeneous f: D(M)_d -> D(M)_{d+deg f}."""
        e = f.degree()
        if e is None:
            return np.zeros((self.dim(d), self.dim(d)), dtype=np.int64)
        mult = self.module.multiplication_matrix(f, -d - e)
        return mult.T.copy()


# ---------------------------------------------------------------------------
# homology of F_* (x) D(M) and Hom(F_*, D(M)) per degree

def _complex_piece_tensor(res, dual: DualWindow, j: int, d: int):
    """Dual degrees feeding (F_j (x) D(M))_d, as a list per generator."""
    return [d - a for a in res.shift(j)]


def _complex_piece_hom(res, dual: DualWindow, j: int, d: int):
    return [d + a for a in res.shift(j)]


def _block_matrix(res, dual: DualWindow, mat_index: int, d: int, variant: str) -> np.ndarray:
    """Matrix of the degree-d piece of the dualized differential d_{mat_index}.

    tensor: (F_j (x) D)_d -> (F_{j-1} (x) D)_d with j = mat_index
    hom:    Hom(F_{j-1}, D)_d -> Hom(F_j, D)_d
    """
    p = dual.module.ring.field.p
    dmat = res.differential(mat_index)
    j = mat_index
    if variant == "tensor":
        src = _complex_piece_tensor(res, dual, j, d)
        dst = _complex_piece_tensor(res, dual, j - 1, d)
    else:
        src = _complex_piece_hom(res, dual, j - 1, d)
        dst = _complex_piece_hom(res, dual, j, d)
    src_dims = [dual.dim(e) for e in src]
    dst_dims = [dual.dim(e) for e in dst]
    out = np.zeros((sum(dst_dims), sum(src_dims)), dtype=np.int64)
    src_off = np.cumsum([0] + src_dims)
    dst_off = np.cumsum([0] + dst_dims)
    for li in range(len(src)):
        for lo_i in range(len(dst)):
            if variant == "tensor":
                f = dmat.entry(lo_i, li)  # entry d[l', l]
            else:
                f = dmat.entry(li, lo_i)  # contravariant: entry d[l', l] with l' = src index
            if f.is_zero:
                continue
            block = dual.poly_action(f, src[li])
            out[dst_off[lo_i]:dst_off[lo_i + 1], src_off[li]:src_off[li + 1]] = block
    return out % p


def _needed_degrees(res, i: int, d: int, variant: str) -> set[int]:
    out: set[int] = set()
    for j in (i - 1, i, i + 1):
        if j < 0 or j >= len(res.shifts):
            continue
        for a in res.shift(j):
            out.add(d - a if variant == "tensor" else d + a)
    return out


def _homology_dim(res, dual: DualWindow, i: int, d: int, variant: str, p: int) -> int:
    if variant == "tensor":
        here = _complex_piece_tensor(res, dual, i, d)
    else:
        here = _complex_piece_hom(res, dual, i, d)
    dim_here = sum(dual.dim(e) for e in here)
    if dim_here == 0:
        return 0
    if variant == "tensor":
        out_map = _block_matrix(res, dual, i, d, variant) if res.differential(i) is not None and i >= 1 else None
        in_map = _block_matrix(res, dual, i + 1, d, variant) if res.differential(i + 1) is not None else None
    else:
        out_map = _block_matrix(res, dual, i + 1, d, variant) if res.differential(i + 1) is not None else None
        in_map = _block_matrix(res, dual, i, d, variant) if res.differential(i) is not None and i >= 1 else None
    kernel = dim_here if out_map is None else dim_here - linalg.rank(out_map, p)
    image = 0 if in_map is None else linalg.rank(in_map, p)
    return kernel - image


def _dual_homology(i: int, n: ModulePresentation, m: ModulePresentation, window, variant: str):
    """Shared driver for Tor_i(N, D(M)) and Ext^i(N, D(M)) degree dimensions."""
    if n.mode != "Z" or m.mode != "Z":
        raise RingError("dual homology works in total-degree grading")
    lo, hi = window
    p = n.ring.field.p
    res = n.resolution(i + 1)
    dual = DualWindow(m, lo, hi)
    dims: dict[int, int] = {}
    incomplete: list[int] = []
    for d in range(lo, hi + 1):
        needed = _needed_degrees(res, i, d, variant)
        if any(not dual.contains(e) for e in needed):
            incomplete.append(d)
            continue
        if i >= len(res.shifts) or res.rank(i) == 0:
            dims[d] = 0
            continue
        dims[d] = _homology_dim(res, dual, i, d, variant, p)
    return dims, incomplete


def tor_with_dual(i: int, n: ModulePresentation, m: ModulePresentation, window):
    """degree -> dim Tor_i(N, D(M))_degree on the window (linear algebra only)."""
    return _dual_homology(i, n, m, window, "tensor")


def ext_into_dual(i: int, n: ModulePresentation, m: ModulePresentation, window):
    """degree -> dim Ext^i(N, D(M))_degree on the window."""
    return _dual_homology(i, n, m, window, "hom")


# ---------------------------------------------------------------------------
# grade detection through Tor against the dual

def required_window_for(n: ModulePresentation, i_max: int, degrees) -> tuple[int, int]:
    """A window that makes every requested degree boundary-complete."""
    res = n.resolution(i_max + 2)
    spread = [0]
    for sh in res.shifts:
        for a in sh:
            spread.append(a)
            spread.append(-a)
    lo = min(degrees) + min(spread)
    hi = max(degrees) + max(spread)
    return lo, hi


def check_grade_tor(i: Ideal, m: ModulePresentation, window) -> VerificationReport:
    """Compare grade(I, M) with the first index where Tor(R/I, D(M)) is nonzero.

    The two sides come from different engines: grade goes through Groebner
    Ext computations, the Tor side through pure linear algebra on dual
    windows.  Nonvanishing at the grade itself is searched both on the given
    window and at the degrees dual to the generators of Ext^c(R/I, M).
    """
    t0 = time.perf_counter()
    ring = i.ring
    rep = VerificationReport(
        statement="grade-tor",
        instance=f"I={i} on M over {ring}",
        window=f"[{window[0]}, {window[1]}]",
        caveats=[CAVEAT_GRADED_MODEL],
    )
    g = grade(i, m)
    if g.is_infinite:
        raise RingError("check_grade_tor needs finite grade")
    c = g.value
    n = ModulePresentation.cyclic(ring, i.gens, "Z")
    ext_c = ext(c, n, m).minimal_presentation()
    witness_degrees = sorted({-s for s in ext_c.gen_shifts})
    scan = sorted(set(range(window[0], window[1] + 1)) | set(witness_degrees))
    full = required_window_for(n, c + 1, scan)
    tor_min = None
    for j in range(c + 1):
        dims, _ = tor_with_dual(j, n, m, full)
        nonzero = {d: v for d, v in dims.items() if d in scan and v}
        if nonzero and tor_min is None:
            tor_min = j
        if j < c:
            rep.add_row(f"Tor_{j} window total", 0, sum(nonzero.values()))
        else:
            rep.add_row(f"Tor_{c} nonzero on window", True, bool(nonzero))
    rep.add_row("min Tor index vs grade", c, tor_min)
    rep.details["grade"] = c
    rep.details["witness_degrees"] = witness_degrees
    rep.finish()
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep
