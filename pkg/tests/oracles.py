"""Independent oracles used to freeze expected values in the tests.

Nothing here goes through Buchberger, syzygies, or the resolution machinery:
only elementary number theory, power series expansion, explicit monomial
enumeration, and dense linear algebra.
"""

from __future__ import annotations

import numpy as np

from loccoh import linalg
from loccoh.rings import mono_divides, mono_mul, monomials_of_degree


def xgcd(a: int, b: int):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def inverse_mod(a: int, p: int) -> int:
    g, x, _ = xgcd(a % p, p)
    assert g == 1
    return x % p


# -- definitional monomial order comparators (independent reimplementation) --

def lex_cmp(a, b, precedence):
    for i in precedence:
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
    return 0


def degrevlex_cmp(a, b, precedence):
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    for i in reversed(precedence):
        if a[i] != b[i]:
            # larger exponent in the least significant position means smaller
            return -1 if a[i] > b[i] else 1
    return 0


# -- power series -------------------------------------------------------------

def series_quotient(numer, denom, terms: int):
    """Coefficients of numer(t)/denom(t) to order `terms` (denom[0] must be 1)."""
    assert denom[0] == 1
    num = list(numer) + [0] * max(0, terms - len(numer))
    coeffs = []
    for d in range(terms):
        c = num[d]
        for k in range(1, min(d, len(denom) - 1) + 1):
            c -= denom[k] * coeffs[d - k]
        coeffs.append(c)
    return coeffs


def poly_mul_series(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# -- brute force ideal membership and colon ideals ------------------------------

def brute_ideal_membership(ring, gens, f) -> bool:
    """f in (gens) decided by solving for cofactor coefficients degreewise.

    Homogeneous generators only; f is split into its homogeneous parts.
    """
    p = ring.field.p
    if f.is_zero:
        return True
    if not f.is_homogeneous():
        by_deg = {}
        for mono, coeff in f.terms:
            by_deg.setdefault(sum(mono), {})[mono] = coeff
        return all(brute_ideal_membership(ring, gens, ring.from_dict(part)) for part in by_deg.values())
    d = f.degree()
    target_basis = {m: i for i, m in enumerate(ring.monomials(d))}
    cols = []
    for g in gens:
        dg = g.degree()
        if dg is None or dg > d:
            continue
        for u in ring.monomials(d - dg):
            vec = np.zeros(len(target_basis), dtype=np.int64)
            for mono, coeff in g.terms:
                vec[target_basis[mono_mul(mono, u)]] = coeff
            cols.append(vec)
    if not cols:
        return False
    a = np.stack(cols, axis=1) % p
    b = np.zeros(len(target_basis), dtype=np.int64)
    for mono, coeff in f.terms:
        b[target_basis[mono]] = coeff
    return linalg.solve(a, b, p) is not None


def brute_colon_membership(ring, j_gens, i_gens, f) -> bool:
    """Whether f * I lies in J, one brute-force membership test per generator."""
    return all(brute_ideal_membership(ring, j_gens, f * g) for g in i_gens)


# -- monomial ideal intersection (lcm construction) -----------------------------

def monomial_intersection(gens_a, gens_b):
    """Minimal generators of the intersection of two monomial ideals."""
    lcms = sorted({tuple(max(x, y) for x, y in zip(a, b)) for a in gens_a for b in gens_b})
    out = []
    for m in sorted(lcms, key=lambda m: (sum(m), m)):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


# -- degreewise minimal resolution of the residue field over a monomial quotient

def linear_algebra_betti_of_k(n, modulus_monos, p, steps, max_d=None):
    """Total Betti numbers of the residue field over S/(monomial ideal).

    Builds the minimal resolution degree by degree with explicit standard
    monomial bases and rank computations; independent of the Groebner path.
    """
    if max_d is None:
        max_d = steps + 2

    def is_std(m):
        return not any(mono_divides(q, m) for q in modulus_monos)

    std = {d: [m for m in monomials_of_degree(n, d) if is_std(m)] for d in range(max_d + 2)}

    def fbasis(shifts, d):
        return [(g, m) for g, s in enumerate(shifts) if d - s >= 0 for m in std[d - s]]

    def var_map(shifts, j, d):
        src = fbasis(shifts, d)
        dst = {t: i for i, t in enumerate(fbasis(shifts, d + 1))}
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        for col, (g, m) in enumerate(src):
            mm = tuple(e + (1 if k == j else 0) for k, e in enumerate(m))
            row = dst.get((g, mm))
            if row is not None:
                out[row, col] = 1
        return out

    # start: K = kernel of R ->> k, i.e. everything in degrees >= 1
    shifts = [0]
    spans = {0: np.zeros((len(std[0]), 0), dtype=np.int64)}
    for d in range(1, max_d + 1):
        spans[d] = np.eye(len(std[d]), dtype=np.int64)
    betti = [1]

    for _ in range(steps):
        gens = []
        for d in range(max_d + 1):
            k_d = spans.get(d)
            if k_d is None or k_d.shape[1] == 0:
                continue
            tracker = linalg.SpanTracker(k_d.shape[0], p)
            prev = spans.get(d - 1)
            if prev is not None and prev.shape[1]:
                for j in range(n):
                    mk = var_map(shifts, j, d - 1) @ prev % p
                    for col in range(mk.shape[1]):
                        tracker.add(mk[:, col])
            for col in range(k_d.shape[1]):
                if tracker.add(k_d[:, col]):
                    gens.append((d, k_d[:, col].copy()))
        betti.append(len(gens))
        if not gens:
            break
        new_shifts = [d for d, _ in gens]
        new_spans = {}
        for d in range(max_d + 1):
            old = fbasis(shifts, d)
            old_pos = {t: i for i, t in enumerate(old)}
            new_basis = fbasis(new_shifts, d)
            cols = np.zeros((len(old), len(new_basis)), dtype=np.int64)
            for colidx, (gi, u) in enumerate(new_basis):
                dg, vec = gens[gi]
                for idx, (g, m) in enumerate(fbasis(shifts, dg)):
                    c = int(vec[idx])
                    if not c:
                        continue
                    mm = mono_mul(m, u)
                    if not is_std(mm):
                        continue
                    row = old_pos.get((g, mm))
                    if row is not None:
                        cols[row, colidx] = (cols[row, colidx] + c) % p
            new_spans[d] = linalg.nullspace(cols, p) if len(new_basis) else np.zeros((0, 0), dtype=np.int64)
        shifts = new_shifts
        spans = new_spans
    return betti
